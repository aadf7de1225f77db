#include "quillen/integer_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "quillen/errors.hpp"

namespace quillen {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidInput("row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

IntVector IntMatrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return {r.begin(), r.end()};
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && sgn((*this)(i, j)) != 0) return false;
  return true;
}

IntMatrix IntMatrix::row_block(std::size_t first, std::size_t count) const {
  IntMatrix b(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    std::copy(row(first + i).begin(), row(first + i).end(), b.row(i).begin());
  return b;
}

IntMatrix IntMatrix::col_block(std::size_t first, std::size_t count) const {
  IntMatrix b(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) b(i, j) = (*this)(i, first + j);
  return b;
}

IntMatrix IntMatrix::stacked(const IntMatrix& below) const {
  if (rows_ == 0) return below;
  if (below.rows_ == 0) return *this;
  if (below.cols_ != cols_) throw InvalidInput("stacking matrices with different widths");
  IntMatrix s(rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), s.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), s.data_.begin() + data_.size());
  return s;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (sgn(factor) == 0) return;
  Integer* t = data_.data() + target * cols_;
  const Integer* s = data_.data() + source * cols_;
  for (std::size_t j = 0; j < cols_; ++j)
    if (sgn(s[j]) != 0) mpz_addmul(t[j].get_mpz_t(), factor.get_mpz_t(), s[j].get_mpz_t());
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Integer& s = (*this)(i, source);
    if (sgn(s) != 0) mpz_addmul((*this)(i, target).get_mpz_t(), factor.get_mpz_t(), s.get_mpz_t());
  }
}

void IntMatrix::negate_row(std::size_t i) {
  for (auto& x : row(i)) x = -x;
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

std::size_t IntMatrix::max_bits() const {
  std::size_t bits = 0;
  for (const auto& x : data_)
    if (sgn(x) != 0) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
  return bits;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) mpz_addmul(c(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix sum dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix difference dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

IntVector multiply(std::span<const Integer> x, const IntMatrix& m) {
  if (x.size() != m.rows()) throw InvalidInput("vector-matrix dimension mismatch");
  IntVector y(m.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) mpz_addmul(y[j].get_mpz_t(), x[i].get_mpz_t(), m(i, j).get_mpz_t());
  }
  return y;
}

IntVector SmithDecomposition::invariant_factors() const {
  IntVector f;
  for (std::size_t i = 0; i < rank; ++i) f.push_back(diagonal(i, i));
  return f;
}

namespace {

// Row/column moves on the working matrix, mirrored onto the transforms.
//
// The matrix is brought to Hermite form by inserting one line at a time
// against an echelon basis whose off-pivot entries stay reduced modulo the
// pivots, alternately on rows and on columns, until it is diagonal. Lines
// that are not being inserted are never touched, which keeps entries bounded
// by the minors instead of growing with every pivot.
class SmithWorker {
 public:
  SmithWorker(const IntMatrix& m, const SmithOptions& o) : opt_(o), d_(m) {
    if (opt_.transforms) {
      u_ = IntMatrix::identity(m.rows());
      v_ = IntMatrix::identity(m.cols());
      if (opt_.inverses) {
        ui_ = IntMatrix::identity(m.rows());
        vi_ = IntMatrix::identity(m.cols());
      }
    }
    limb_bound_ = opt_.bit_bound == 0 ? 0 : opt_.bit_bound / GMP_NUMB_BITS + 1;
  }

  SmithDecomposition run() {
    std::size_t rank = 0;
    if (!d_.is_zero()) {
      Side side = Side::Rows;
      for (;;) {
        rank = hermite(side);
        if (single_entry_lines(side, rank)) break;
        side = side == Side::Rows ? Side::Cols : Side::Rows;
      }
      move_to_diagonal(rank);
      fix_divisibility(rank);
      for (std::size_t i = 0; i < rank; ++i)
        if (sgn(d_(i, i)) < 0) negate_row(i);
    }
    SmithDecomposition out;
    out.rank = rank;
    out.diagonal = std::move(d_);
    out.left = std::move(u_);
    out.right = std::move(v_);
    out.left_inverse = std::move(ui_);
    out.right_inverse = std::move(vi_);
    return out;
  }

 private:
  enum class Side { Rows, Cols };

  // Line a of the chosen side, entry at position b across.
  Integer& at(Side s, std::size_t a, std::size_t b) { return s == Side::Rows ? d_(a, b) : d_(b, a); }
  std::size_t lines(Side s) const { return s == Side::Rows ? d_.rows() : d_.cols(); }
  std::size_t across(Side s) const { return s == Side::Rows ? d_.cols() : d_.rows(); }
  void add_line(Side s, std::size_t target, std::size_t source, const Integer& f) {
    s == Side::Rows ? add_row(target, source, f) : add_col(target, source, f);
  }
  void swap_lines(Side s, std::size_t a, std::size_t b) { s == Side::Rows ? swap_rows(a, b) : swap_cols(a, b); }
  void negate_line(Side s, std::size_t a) { s == Side::Rows ? negate_row(a) : negate_col(a); }

  std::size_t first_nonzero(Side s, std::size_t line, std::size_t from) {
    const std::size_t n = across(s);
    for (std::size_t b = from; b < n; ++b)
      if (sgn(at(s, line, b)) != 0) return b;
    return n;
  }

  // Line `b` becomes zero at position p against basis line j (both zero before p).
  // Returns true when line j changed.
  bool euclid(Side s, std::size_t j, std::size_t b, std::size_t p) {
    Integer q;
    bool changed = false;
    while (sgn(at(s, b, p)) != 0) {
      if (mpz_cmpabs(at(s, b, p).get_mpz_t(), at(s, j, p).get_mpz_t()) < 0) {
        swap_lines(s, j, b);
        changed = true;
      }
      nearest_quotient(q, at(s, b, p), at(s, j, p));
      add_line(s, b, j, -q);
    }
    if (sgn(at(s, j, p)) < 0) {
      negate_line(s, j);
      changed = true;
    }
    return changed;
  }

  // Reduces line a modulo basis lines first..k-1 at their pivots.
  void reduce_against(Side s, std::size_t a, std::size_t first, std::size_t k, const std::vector<std::size_t>& pivot) {
    Integer q;
    for (std::size_t l = first; l < k; ++l) {
      const Integer& x = at(s, a, pivot[l]);
      if (sgn(x) == 0) continue;
      nearest_quotient(q, x, at(s, l, pivot[l]));
      add_line(s, a, l, -q);
    }
  }

  // Basis line j changed: reduce it against later pivots and earlier lines against it.
  void settle(Side s, std::size_t j, std::size_t k, const std::vector<std::size_t>& pivot) {
    reduce_against(s, j, j + 1, k, pivot);
    Integer q;
    for (std::size_t a = 0; a < j; ++a) {
      const Integer& x = at(s, a, pivot[j]);
      if (sgn(x) == 0) continue;
      nearest_quotient(q, x, at(s, j, pivot[j]));
      add_line(s, a, j, -q);
    }
  }

  // Echelon form on the chosen side; returns the number of nonzero lines,
  // which then occupy positions 0..k-1 with increasing pivots.
  std::size_t hermite(Side s) {
    const std::size_t n = lines(s);
    std::vector<std::size_t> pivot;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      // Lines k..i-1 are zero; bring line i to position k.
      swap_lines(s, k, i);
      const std::size_t b = k;
      std::size_t p = first_nonzero(s, b, 0);
      std::size_t j = 0;
      while (p < across(s)) {
        while (j < k && pivot[j] < p) ++j;
        if (j < k && pivot[j] == p) {
          if (euclid(s, j, b, p)) settle(s, j, k, pivot);
          p = first_nonzero(s, b, p + 1);
          continue;
        }
        // New pivot at p: reduce against the later basis lines and move into place.
        reduce_against(s, b, j, k, pivot);
        if (sgn(at(s, b, p)) < 0) negate_line(s, b);
        for (std::size_t pos = b; pos > j; --pos) swap_lines(s, pos, pos - 1);
        pivot.insert(pivot.begin() + static_cast<std::ptrdiff_t>(j), p);
        ++k;
        settle(s, j, k, pivot);
        break;
      }
    }
    return k;
  }

  // Every nonzero line of the side has exactly one nonzero entry.
  bool single_entry_lines(Side s, std::size_t k) {
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t p = first_nonzero(s, a, 0);
      if (first_nonzero(s, a, p + 1) != across(s)) return false;
    }
    return true;
  }

  // A generalized permutation matrix with `rank` entries into diagonal position.
  void move_to_diagonal(std::size_t rank) {
    for (std::size_t t = 0; t < rank; ++t) {
      std::size_t bi = d_.rows(), bj = d_.cols();
      for (std::size_t i = t; i < d_.rows() && bi == d_.rows(); ++i) {
        const std::size_t j = first_nonzero(Side::Rows, i, t);
        if (j < d_.cols()) {
          bi = i;
          bj = j;
        }
      }
      swap_rows(t, bi);
      swap_cols(t, bj);
    }
  }

  // Diagonal entries 0..rank-1 into a divisibility chain: diag(a, b) becomes
  // diag(gcd, lcm) by adding column j to column i and clearing the 2x2 block.
  void fix_divisibility(std::size_t rank) {
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = i + 1; j < rank; ++j) {
        if (mpz_divisible_p(d_(j, j).get_mpz_t(), d_(i, i).get_mpz_t())) continue;
        add_col(i, j, 1);
        clear_block(i, j);
      }
  }

  void clear_block(std::size_t i, std::size_t j) {
    Integer q;
    while (sgn(d_(j, i)) != 0 || sgn(d_(i, j)) != 0) {
      while (sgn(d_(j, i)) != 0) {
        if (mpz_cmpabs(d_(j, i).get_mpz_t(), d_(i, i).get_mpz_t()) < 0) swap_rows(i, j);
        nearest_quotient(q, d_(j, i), d_(i, i));
        add_row(j, i, -q);
      }
      while (sgn(d_(i, j)) != 0) {
        if (mpz_cmpabs(d_(i, j).get_mpz_t(), d_(i, i).get_mpz_t()) < 0) swap_cols(i, j);
        nearest_quotient(q, d_(i, j), d_(i, i));
        add_col(j, i, -q);
      }
    }
  }

  // q with |a - q b| <= |b| / 2.
  static void nearest_quotient(Integer& q, const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer twice = 2 * abs(r);
    if (mpz_cmpabs(twice.get_mpz_t(), b.get_mpz_t()) > 0) q += 1;
  }

  void check_row(std::size_t i) {
    if (limb_bound_ == 0) return;
    for (const auto& x : d_.row(i)) check(x);
  }
  void check_col(std::size_t j) {
    if (limb_bound_ == 0) return;
    for (std::size_t i = 0; i < d_.rows(); ++i) check(d_(i, j));
  }
  void check(const Integer& x) const {
    if (mpz_size(x.get_mpz_t()) >= limb_bound_ && mpz_sizeinbase(x.get_mpz_t(), 2) > opt_.bit_bound) overflow();
  }
  [[noreturn]] void overflow() const {
    throw BudgetExceeded("Smith normal form: intermediate entry exceeds " +
                         std::to_string(opt_.bit_bound) + " bits");
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    d_.swap_rows(a, b);
    if (!opt_.transforms) return;
    u_.swap_rows(a, b);
    if (opt_.inverses) ui_.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    d_.swap_cols(a, b);
    if (!opt_.transforms) return;
    v_.swap_cols(a, b);
    if (opt_.inverses) vi_.swap_rows(a, b);
  }
  // row[target] += f * row[source]
  void add_row(std::size_t target, std::size_t source, const Integer& f) {
    if (sgn(f) == 0) return;
    d_.add_row_multiple(target, source, f);
    check_row(target);
    if (!opt_.transforms) return;
    u_.add_row_multiple(target, source, f);
    if (opt_.inverses) ui_.add_col_multiple(source, target, -f);
  }
  // col[target] += f * col[source]
  void add_col(std::size_t target, std::size_t source, const Integer& f) {
    if (sgn(f) == 0) return;
    d_.add_col_multiple(target, source, f);
    check_col(target);
    if (!opt_.transforms) return;
    v_.add_col_multiple(target, source, f);
    if (opt_.inverses) vi_.add_row_multiple(source, target, -f);
  }
  void negate_row(std::size_t i) {
    d_.negate_row(i);
    if (!opt_.transforms) return;
    u_.negate_row(i);
    if (opt_.inverses) ui_.negate_col(i);
  }
  void negate_col(std::size_t j) {
    d_.negate_col(j);
    if (!opt_.transforms) return;
    v_.negate_col(j);
    if (opt_.inverses) vi_.negate_row(j);
  }

  SmithOptions opt_;
  IntMatrix d_, u_, v_, ui_, vi_;
  std::size_t limb_bound_ = 0;
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m, const SmithOptions& options) {
  return SmithWorker(m, options).run();
}

IntVector invariant_factors(const IntMatrix& m, std::size_t bit_bound) {
  SmithOptions o;
  o.transforms = false;
  o.bit_bound = bit_bound;
  return SmithWorker(m, o).run().invariant_factors();
}

IntMatrix left_kernel(const IntMatrix& m, std::size_t bit_bound) {
  SmithOptions o;
  o.bit_bound = bit_bound;
  auto s = smith_normal_form(m, o);
  return s.left.row_block(s.rank, m.rows() - s.rank);
}

std::optional<IntVector> solve_left(const IntMatrix& m, std::span<const Integer> b,
                                    std::size_t bit_bound) {
  if (b.size() != m.cols()) throw InvalidInput("solve_left: right-hand side has wrong length");
  SmithOptions o;
  o.bit_bound = bit_bound;
  auto s = smith_normal_form(m, o);
  // y m = b  <=>  (y U^-1) D = b V
  IntVector bv = multiply(b, s.right);
  IntVector z(m.rows());
  for (std::size_t i = 0; i < bv.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(bv[i].get_mpz_t(), s.diagonal(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(z[i].get_mpz_t(), bv[i].get_mpz_t(), s.diagonal(i, i).get_mpz_t());
    } else if (sgn(bv[i]) != 0) {
      return std::nullopt;
    }
  }
  return multiply(z, s.left);
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("inverse of a non-square matrix");
  auto s = smith_normal_form(m);
  if (s.rank != m.rows()) return std::nullopt;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.diagonal(i, i) != 1) return std::nullopt;
  return s.right * s.left;
}

}  // namespace quillen
