#include <random>

#include <benchmark/benchmark.h>

#include "quillen/group_homology.hpp"
#include "quillen/modp.hpp"
#include "quillen/plus_construction.hpp"

using namespace quillen;

namespace {

IntMatrix random_matrix(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % 19) - 9;
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  IntMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(32);

void BM_BarSliceRankModP(benchmark::State& state) {
  BarSlice bar(builtin_group(state.range(0) == 0 ? "A4" : "S4"));
  std::vector<std::pair<std::size_t, long>> row;
  for (auto _ : state) {
    ModPEchelon e(2, bar.rank(2));
    for (std::size_t r = 0; r < bar.rank(3); ++r) {
      bar.boundary_row(3, r, row);
      std::vector<std::pair<std::size_t, std::int64_t>> entries(row.begin(), row.end());
      e.insert_sparse(entries);
    }
    benchmark::DoNotOptimize(e.rank());
  }
}
BENCHMARK(BM_BarSliceRankModP)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RegularRepresentation(benchmark::State& state) {
  GroupPtr g = builtin_group("A5");
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  GroupRingMatrix m(g, {}, n, n);
  std::mt19937 rng(11);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = GroupRingElement::basis(g, rng() % g->order()) - GroupRingElement::basis(g, rng() % g->order());
  for (auto _ : state) benchmark::DoNotOptimize(regular_representation(m));
}
BENCHMARK(BM_RegularRepresentation)->Arg(1)->Arg(2)->Arg(4);

void BM_PlusWithTorsion(benchmark::State& state) {
  GroupHom alpha = builtin_presentation("Z/5");
  GroupRingMatrix a(alpha.target(), {}, 1, 1);
  a(0, 0) = parse_group_ring_element("t + t^4 - 1", alpha.target());
  for (auto _ : state) benchmark::DoNotOptimize(plus_with_torsion(alpha, {}, a));
}
BENCHMARK(BM_PlusWithTorsion)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
