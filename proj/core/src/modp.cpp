#include "quillen/modp.hpp"

#include <bit>

#include "quillen/errors.hpp"

namespace quillen {

std::uint32_t reduce_mod(const Integer& x, std::uint32_t p) {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(x.get_mpz_t(), p));
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw InvalidInput("element not invertible mod " + std::to_string(p));
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

ModPEchelon::ModPEchelon(std::uint32_t p, std::size_t cols)
    : p_(p), cols_(cols), pivot_of_col_(cols, -1) {
  if (p < 2) throw InvalidInput("modulus must be at least 2");
}

bool ModPEchelon::insert(std::vector<std::uint32_t> row) {
  if (row.size() != cols_) throw InvalidInput("row length mismatch");
  return reduce_and_store(row);
}

bool ModPEchelon::insert_sparse(std::span<const std::pair<std::size_t, std::int64_t>> entries) {
  std::vector<std::uint32_t> row(cols_, 0);
  const auto p = static_cast<std::int64_t>(p_);
  for (auto [c, v] : entries) {
    std::int64_t r = (static_cast<std::int64_t>(row[c]) + v % p + p) % p;
    row[c] = static_cast<std::uint32_t>(r);
  }
  return reduce_and_store(row);
}

bool ModPEchelon::reduce_and_store(std::vector<std::uint32_t>& row) {
  const std::uint64_t p = p_;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (row[c] == 0) continue;
    const std::int64_t pr = pivot_of_col_[c];
    if (pr < 0) {
      const std::uint64_t inv = inverse_mod(row[c], p_);
      for (std::size_t j = c; j < cols_; ++j) row[j] = static_cast<std::uint32_t>(row[j] * inv % p);
      pivot_of_col_[c] = static_cast<std::int64_t>(pivot_rows_.size());
      pivot_rows_.push_back(std::move(row));
      return true;
    }
    const auto& piv = pivot_rows_[static_cast<std::size_t>(pr)];
    const std::uint64_t f = p - row[c];
    for (std::size_t j = c; j < cols_; ++j)
      if (piv[j] != 0) row[j] = static_cast<std::uint32_t>((row[j] + f * piv[j]) % p);
  }
  return false;
}

F2Echelon::F2Echelon(std::size_t cols)
    : cols_(cols), words_((cols + 63) / 64), pivot_of_col_(cols, -1) {}

bool F2Echelon::insert(std::vector<std::uint64_t> row) {
  if (row.size() != words_) throw InvalidInput("row length mismatch");
  for (std::size_t w = 0; w < words_; ++w) {
    while (row[w] != 0) {
      const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
      const std::int64_t pr = pivot_of_col_[c];
      if (pr < 0) {
        pivot_of_col_[c] = static_cast<std::int64_t>(pivot_rows_.size());
        pivot_rows_.push_back(std::move(row));
        return true;
      }
      const auto& piv = pivot_rows_[static_cast<std::size_t>(pr)];
      for (std::size_t k = w; k < words_; ++k) row[k] ^= piv[k];
    }
  }
  return false;
}

bool F2Echelon::insert_sparse(std::span<const std::size_t> columns) {
  std::vector<std::uint64_t> row(words_, 0);
  for (std::size_t c : columns) {
    if (c >= cols_) throw InvalidInput("column out of range");
    row[c / 64] ^= std::uint64_t{1} << (c % 64);
  }
  return insert(std::move(row));
}

namespace {

struct Rref {
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<std::size_t> pivots;  // pivot column of each row
};

// Reduced row echelon form of an F_p matrix given by rows.
Rref rref(std::vector<std::vector<std::uint32_t>> a, std::size_t cols, std::uint32_t p) {
  Rref out;
  const std::uint64_t pp = p;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    const std::uint64_t inv = inverse_mod(a[r][c], p);
    for (auto& x : a[r]) x = static_cast<std::uint32_t>(x * inv % pp);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t f = pp - a[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        if (a[r][j] != 0) a[i][j] = static_cast<std::uint32_t>((a[i][j] + f * a[r][j]) % pp);
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

std::vector<std::vector<std::uint32_t>> reduced_rows(const IntMatrix& m, std::uint32_t p) {
  std::vector<std::vector<std::uint32_t>> a(m.rows(), std::vector<std::uint32_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = reduce_mod(m(i, j), p);
  return a;
}

}  // namespace

std::size_t rank_mod_p(const IntMatrix& m, std::uint32_t p) {
  ModPEchelon e(p, m.cols());
  for (auto& row : reduced_rows(m, p)) {
    e.insert(std::move(row));
    if (e.rank() == m.cols()) break;
  }
  return e.rank();
}

std::optional<IntVector> solve_left_mod_p(const IntMatrix& m, std::span<const Integer> b,
                                          std::uint32_t p) {
  if (b.size() != m.cols()) throw InvalidInput("solve_left_mod_p: right-hand side has wrong length");
  // Equations: for each column j of m, sum_i y_i m(i,j) = b_j.
  const std::size_t n = m.rows();
  std::vector<std::vector<std::uint32_t>> aug(m.cols(), std::vector<std::uint32_t>(n + 1));
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) aug[j][i] = reduce_mod(m(i, j), p);
    aug[j][n] = reduce_mod(b[j], p);
  }
  Rref r = rref(std::move(aug), n + 1, p);
  IntVector y(n);
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    if (r.pivots[k] == n) return std::nullopt;
    y[r.pivots[k]] = r.rows[k][n];
  }
  return y;
}

IntMatrix left_kernel_mod_p(const IntMatrix& m, std::uint32_t p) {
  // Kernel of the transpose system: y with m^T y^T = 0.
  const std::size_t n = m.rows();
  std::vector<std::vector<std::uint32_t>> eq(m.cols(), std::vector<std::uint32_t>(n));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i) eq[j][i] = reduce_mod(m(i, j), p);
  Rref r = rref(std::move(eq), n, p);
  std::vector<bool> is_pivot(n, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    IntVector v(n);
    v[f] = 1;
    for (std::size_t k = 0; k < r.rows.size(); ++k)
      if (r.rows[k][f] != 0) v[r.pivots[k]] = p - r.rows[k][f];
    basis.push_back(std::move(v));
  }
  return IntMatrix::from_rows(basis, n);
}

std::vector<std::size_t> independent_rows_mod_p(const IntMatrix& m, std::uint32_t p) {
  ModPEchelon e(p, m.cols());
  std::vector<std::size_t> picked;
  auto rows = reduced_rows(m, p);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (e.insert(std::move(rows[i]))) picked.push_back(i);
  return picked;
}

}  // namespace quillen
