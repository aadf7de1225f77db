#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "quillen/integer_matrix.hpp"

namespace quillen {

/// Row-echelon basis over F_p (p < 2^31), grown one row at a time.
///
/// Rows are reduced against the stored pivots on insertion, so a stream of
/// rows can be ranked without ever holding the whole matrix.
class ModPEchelon {
 public:
  ModPEchelon(std::uint32_t p, std::size_t cols);

  /// Inserts `row` (entries in [0, p)); returns true if it raised the rank.
  bool insert(std::vector<std::uint32_t> row);
  /// Inserts a sparse row given as (column, value) pairs, values reduced mod p.
  bool insert_sparse(std::span<const std::pair<std::size_t, std::int64_t>> entries);

  std::size_t rank() const noexcept { return pivot_rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t prime() const noexcept { return p_; }

 private:
  bool reduce_and_store(std::vector<std::uint32_t>& row);

  std::uint32_t p_;
  std::size_t cols_;
  std::vector<std::int64_t> pivot_of_col_;
  std::vector<std::vector<std::uint32_t>> pivot_rows_;
};

/// Specialization of ModPEchelon for p = 2 on packed 64-bit words.
class F2Echelon {
 public:
  explicit F2Echelon(std::size_t cols);

  bool insert(std::vector<std::uint64_t> row);
  /// Sparse insertion; repeated columns cancel in pairs.
  bool insert_sparse(std::span<const std::size_t> columns);

  std::size_t rank() const noexcept { return pivot_rows_.size(); }
  std::size_t words() const noexcept { return words_; }

 private:
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::int64_t> pivot_of_col_;
  std::vector<std::vector<std::uint64_t>> pivot_rows_;
};

std::uint32_t reduce_mod(const Integer& x, std::uint32_t p);
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Rank of m over F_p.
std::size_t rank_mod_p(const IntMatrix& m, std::uint32_t p);

/// Some y with y * m = b over F_p, free variables set to zero; entries in [0, p).
std::optional<IntVector> solve_left_mod_p(const IntMatrix& m, std::span<const Integer> b,
                                          std::uint32_t p);

/// Basis (as rows, entries in [0, p)) of {y : y * m = 0} over F_p.
IntMatrix left_kernel_mod_p(const IntMatrix& m, std::uint32_t p);

/// Indices of a maximal F_p-independent subset of the rows, greedy in order.
std::vector<std::size_t> independent_rows_mod_p(const IntMatrix& m, std::uint32_t p);

}  // namespace quillen
