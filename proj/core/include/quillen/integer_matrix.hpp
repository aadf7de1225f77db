#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace quillen {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Chain-level conventions throughout the library are row-vector: a linear
/// map C -> D is a matrix with one row per basis element of C, and x maps
/// to x * M.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  IntVector row_vector(std::size_t i) const;

  IntMatrix transpose() const;
  bool is_zero() const;
  bool is_diagonal() const;
  /// Rows [first, first+count) as a new matrix.
  IntMatrix row_block(std::size_t first, std::size_t count) const;
  IntMatrix col_block(std::size_t first, std::size_t count) const;
  /// Stacks `below` under this matrix; column counts must agree.
  IntMatrix stacked(const IntMatrix& below) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  /// col[target] += factor * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  std::size_t max_bits() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Row vector times matrix.
IntVector multiply(std::span<const Integer> x, const IntMatrix& m);

struct SmithOptions {
  bool transforms = true;
  bool inverses = false;
  /// Abort with BudgetExceeded when an entry exceeds this many bits (0 = off).
  std::size_t bit_bound = 65536;
};

/// D = left * m * right with D diagonal, d1 | d2 | ... and d_i >= 0.
/// `left_inverse` / `right_inverse` are filled when requested.
struct SmithDecomposition {
  IntMatrix diagonal;
  IntMatrix left;
  IntMatrix right;
  IntMatrix left_inverse;
  IntMatrix right_inverse;
  std::size_t rank = 0;

  /// The nonzero diagonal entries, in order.
  IntVector invariant_factors() const;
};

/// Smith normal form by unimodular row and column moves.
///
/// Pivot rule: smallest-magnitude nonzero entry of the remaining block,
/// ties broken by lowest (row, column). The output is a deterministic
/// function of the input.
SmithDecomposition smith_normal_form(const IntMatrix& m, const SmithOptions& options = {});

/// Nonzero invariant factors only; skips transform bookkeeping.
IntVector invariant_factors(const IntMatrix& m, std::size_t bit_bound = 65536);

/// Basis (as rows) of the saturated lattice {y : y * m = 0}.
IntMatrix left_kernel(const IntMatrix& m, std::size_t bit_bound = 65536);

/// Some y with y * m = b, if one exists over Z.
std::optional<IntVector> solve_left(const IntMatrix& m, std::span<const Integer> b,
                                    std::size_t bit_bound = 65536);

/// Exact determinant (Bareiss fraction-free elimination).
Integer determinant(const IntMatrix& m);

/// Inverse over Z; nullopt when |det| != 1.
std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m);

}  // namespace quillen
