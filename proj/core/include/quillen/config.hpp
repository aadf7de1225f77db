#pragma once

#include <cstddef>

namespace quillen {

/// Size and arithmetic budgets. Every bound is a value here, never a
/// constant buried in an algorithm.
struct Config {
  // groups
  std::size_t exhaustive_check_bound = 5040;
  std::size_t enumeration_bound = 60;
  std::size_t coset_limit = 200'000;
  // grouphomology: (|G|-1)^3 columns of the degree-3 bar slice
  std::size_t bar_column_budget = 1'000'000;
  // grouphomology: entries of the degree-3 bar slice for the exact Z route
  std::size_t dense_snf_entry_budget = 250'000;
  // grouphomology: the same, for Sylow subgroups certifying the prime-by-prime route
  std::size_t sylow_snf_entry_budget = 250'000;
  // chains: largest intermediate integer, in bits
  std::size_t bit_bound = 65536;
  // torsion: bounded elementary-operation search
  std::size_t search_node_budget = 20'000;
  std::size_t search_beam_width = 8;
  std::size_t stabilization_cap = 2;
  // reporting
  int float_precision = 12;
};

}  // namespace quillen
