#include <random>

#include <gtest/gtest.h>

#include "quillen/errors.hpp"
#include "quillen/integer_matrix.hpp"
#include "quillen/modp.hpp"

using namespace quillen;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

IntVector diagonal_of(const IntMatrix& d) {
  IntVector out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

}  // namespace

TEST(SmithNormalForm, FrozenExamples) {
  EXPECT_EQ(diagonal_of(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).diagonal), (IntVector{1, 6}));
  EXPECT_EQ(diagonal_of(smith_normal_form(IntMatrix{{1, 2}, {2, 4}}).diagonal), (IntVector{1, 0}));
  EXPECT_EQ(diagonal_of(smith_normal_form(IntMatrix{{2, 0}, {0, 3}, {5, 5}}).diagonal), (IntVector{1, 1}));
  EXPECT_EQ(invariant_factors(IntMatrix{{2, 0}, {0, 3}}), (IntVector{1, 6}));
}

TEST(SmithNormalForm, TransformsReproduceDiagonal) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    IntMatrix m = random_matrix(rng, r, c, 9);
    SmithOptions opt;
    opt.inverses = true;
    auto s = smith_normal_form(m, opt);
    EXPECT_EQ(s.left * m * s.right, s.diagonal);
    EXPECT_TRUE(s.diagonal.is_diagonal());
    EXPECT_EQ(s.left * s.left_inverse, IntMatrix::identity(r));
    EXPECT_EQ(s.right * s.right_inverse, IntMatrix::identity(c));
    auto f = s.invariant_factors();
    ASSERT_EQ(f.size(), s.rank);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) EXPECT_EQ(f[i + 1] % f[i], 0);
    for (const auto& x : f) EXPECT_GT(x, 0);
  }
}

TEST(SmithNormalForm, Deterministic) {
  std::mt19937 rng(11);
  IntMatrix m = random_matrix(rng, 5, 4, 20);
  auto a = smith_normal_form(m), b = smith_normal_form(m);
  EXPECT_EQ(a.left, b.left);
  EXPECT_EQ(a.right, b.right);
}

TEST(SmithNormalForm, BitBoundRaisesBudget) {
  IntMatrix m{{1000000007, 3}, {5, 1000000009}};
  SmithOptions opt;
  opt.bit_bound = 8;
  EXPECT_THROW(smith_normal_form(m, opt), BudgetExceeded);
}

TEST(IntegerLinearAlgebra, KernelAndSolve) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = random_matrix(rng, 2 + rng() % 5, 1 + rng() % 4, 6);
    IntMatrix k = left_kernel(m);
    for (std::size_t i = 0; i < k.rows(); ++i)
      for (const auto& x : multiply(k.row(i), m)) EXPECT_EQ(x, 0);
    auto s = smith_normal_form(m);
    EXPECT_EQ(k.rows(), m.rows() - s.rank);

    IntVector x(m.rows());
    std::uniform_int_distribution<int> d(-4, 4);
    for (auto& v : x) v = d(rng);
    IntVector b = multiply(x, m);
    auto y = solve_left(m, b);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(multiply(*y, m), b);
  }
  EXPECT_FALSE(solve_left(IntMatrix{{2, 0}, {0, 2}}, IntVector{1, 0}).has_value());
}

TEST(IntegerLinearAlgebra, DeterminantAndInverse) {
  EXPECT_EQ(determinant(IntMatrix{{2, 1}, {7, 4}}), 1);
  EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}), -3);
  auto inv = unimodular_inverse(IntMatrix{{2, 1}, {7, 4}});
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(*inv * (IntMatrix{{2, 1}, {7, 4}}), IntMatrix::identity(2));
  EXPECT_FALSE(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}).has_value());

  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix a = random_matrix(rng, 4, 4, 5), b = random_matrix(rng, 4, 4, 5);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
  }
}

TEST(ModP, RankMatchesIntegerFactors) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = random_matrix(rng, 1 + rng() % 6, 1 + rng() % 6, 6);
    auto f = invariant_factors(m);
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      std::size_t expected = 0;
      for (const auto& x : f)
        if (x % p != 0) ++expected;
      EXPECT_EQ(rank_mod_p(m, p), expected);
    }
  }
}

TEST(ModP, KernelSolveAndIndependentRows) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t p = trial % 2 ? 2 : 5;
    IntMatrix m = random_matrix(rng, 2 + rng() % 5, 1 + rng() % 5, 4);
    IntMatrix k = left_kernel_mod_p(m, p);
    for (std::size_t i = 0; i < k.rows(); ++i)
      for (const auto& x : multiply(k.row(i), m)) EXPECT_EQ(reduce_mod(x, p), 0u);
    EXPECT_EQ(k.rows() + rank_mod_p(m, p), m.rows());
    EXPECT_EQ(independent_rows_mod_p(m, p).size(), rank_mod_p(m, p));

    IntVector x(m.rows(), 1);
    IntVector b = multiply(x, m);
    auto y = solve_left_mod_p(m, b, p);
    ASSERT_TRUE(y.has_value());
    IntVector yb = multiply(*y, m);
    for (std::size_t j = 0; j < b.size(); ++j) EXPECT_EQ(reduce_mod(yb[j] - b[j], p), 0u);
  }
}

TEST(ModP, F2EchelonAgreesWithGeneric) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t cols = 1 + rng() % 130;
    F2Echelon f2(cols);
    ModPEchelon gen(2, cols);
    for (int r = 0; r < 40; ++r) {
      std::vector<std::size_t> support;
      std::vector<std::pair<std::size_t, std::int64_t>> entries;
      for (int k = 0; k < 3; ++k) {
        const std::size_t c = rng() % cols;
        support.push_back(c);
        entries.emplace_back(c, 1);
      }
      EXPECT_EQ(f2.insert_sparse(support), gen.insert_sparse(entries));
    }
    EXPECT_EQ(f2.rank(), gen.rank());
  }
}

TEST(SmithNormalForm, DenseRandomMatricesStayWithinBudget) {
  std::mt19937 rng(5);
  for (std::size_t n : {12, 24, 40}) {
    IntMatrix m = random_matrix(rng, n, n, 9);
    auto d = smith_normal_form(m);
    EXPECT_EQ(d.left * m * d.right, d.diagonal);
    auto f = d.invariant_factors();
    Integer product = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i > 0) EXPECT_TRUE(mpz_divisible_p(f[i].get_mpz_t(), f[i - 1].get_mpz_t()));
      product *= f[i];
    }
    EXPECT_EQ(product, abs(determinant(m))) << n;
  }
}
