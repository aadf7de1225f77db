#include "quillen/torsion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "quillen/errors.hpp"

namespace quillen {

// ---------------------------------------------------------------- classes

TorsionClass::TorsionClass(GroupRingMatrix representative, int parity)
    : representative_(std::move(representative)), parity_(((parity % 2) + 2) % 2) {
  if (representative_.rows() != representative_.cols())
    throw NotInvertible("torsion representative must be square");
  auto inv = quillen::inverse(representative_);
  if (!inv) throw NotInvertible("torsion representative is not invertible over Z[G]");
  inverse_ = std::move(*inv);
}

TorsionClass TorsionClass::trivial(const GroupPtr& g, std::size_t size, int parity) {
  return TorsionClass(GroupRingMatrix::identity(g, size), parity);
}

TorsionClass TorsionClass::with_parity(int parity) const {
  TorsionClass t = *this;
  t.parity_ = ((parity % 2) + 2) % 2;
  return t;
}

TorsionClass conjugate(const TorsionClass& tau) {
  return TorsionClass(tau.representative().conjugate_transpose(), tau.parity());
}

TorsionClass dual_sign(const TorsionClass& tau) {
  if (tau.parity() == 0) return conjugate(tau);
  return TorsionClass(tau.inverse().conjugate_transpose(), tau.parity());
}

TorsionClass compose(const TorsionClass& a, const TorsionClass& b) {
  if (!same_group(a.group(), b.group())) throw MixedGroups("torsion classes over different groups");
  return TorsionClass(block_diagonal(a.representative(), b.representative()), a.parity());
}

TorsionClass glue_formula(const TorsionClass& tau, int parity) {
  TorsionClass t = tau.with_parity(parity);
  return compose(t, dual_sign(t));
}

// ---------------------------------------------------------------- invariants

namespace {

// Division-free determinant over a commutative ring (Bird's recurrence).
template <class T, class Neg>
T bird_determinant(const std::vector<std::vector<T>>& a, const T& zero, const T& one, Neg neg) {
  const std::size_t n = a.size();
  if (n == 0) return one;
  auto x = a;
  for (std::size_t step = 1; step < n; ++step) {
    std::vector<std::vector<T>> mu(n, std::vector<T>(n, zero));
    T running = zero;
    for (std::size_t i = n; i-- > 0;) {
      mu[i][i] = neg(running);
      running = running + x[i][i];
      for (std::size_t j = i + 1; j < n; ++j) mu[i][j] = x[i][j];
    }
    std::vector<std::vector<T>> next(n, std::vector<T>(n, zero));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i; k < n; ++k) {
        if (mu[i][k] == zero) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] + mu[i][k] * a[k][j];
      }
    x = std::move(next);
  }
  return n % 2 == 1 ? x[0][0] : neg(x[0][0]);
}

GroupRingElement canonical_mod_units(const GroupRingElement& d) {
  const GroupPtr& g = d.group();
  IntVector best;
  GroupRingElement chosen = d;
  for (Element h = 0; h < g->order(); ++h)
    for (int s : {1, -1}) {
      GroupRingElement c = (GroupRingElement::basis(g, h) * d).scaled(s);
      IntVector v = c.dense();
      if (best.empty() || v > best) {
        best = v;
        chosen = c;
      }
    }
  return chosen;
}

Cyclotomic evaluate(const GroupRingElement& e, const Character& chi) {
  Cyclotomic v(chi.conductor);
  for (const auto& [g, c] : e.terms()) v += Cyclotomic::rational(chi.conductor, c) * chi.value(g);
  return v;
}

}  // namespace

bool TorsionInvariant::matches(const TorsionInvariant& other) const {
  if (!(abelianized_det == other.abelianized_det) || characters.size() != other.characters.size()) return false;
  for (std::size_t i = 0; i < characters.size(); ++i)
    if (!(characters[i].norm == other.characters[i].norm)) return false;
  return true;
}

TorsionInvariant invariant(const TorsionClass& tau, const Config&) {
  const GroupPtr& g = tau.group();
  const GroupRingMatrix& a = tau.representative();
  const std::size_t n = a.rows();
  TorsionInvariant inv;
  inv.regular_det = n == 0 ? Integer(1) : determinant(regular_representation(a));
  inv.aug_det = n == 0 ? Integer(1) : determinant(a.augmented());
  if (abs(inv.regular_det) != 1) throw NotInvertible("regular representation determinant is not a unit");

  Subgroup whole = whole_group(g);
  Quotient q = quotient(g, commutator_subgroup_with(g, whole, whole));
  std::vector<std::vector<GroupRingElement>> ab(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ab[i].push_back(a(i, j).mapped(q.group, q.projection));
  GroupRingElement det = bird_determinant(ab, GroupRingElement::zero(q.group), GroupRingElement::one(q.group),
                                          [](const GroupRingElement& x) { return -x; });
  inv.abelianized_det = canonical_mod_units(det);

  for (const auto& chi : linear_characters(g)) {
    const Cyclotomic zero(chi.conductor), one = Cyclotomic::rational(chi.conductor, 1);
    std::vector<std::vector<Cyclotomic>> m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i].push_back(evaluate(a(i, j), chi));
    CharacterDatum d;
    d.character = chi;
    d.value = bird_determinant(m, zero, one, [&](const Cyclotomic& x) { return zero - x; });
    d.norm = d.value * d.value.conjugate();
    d.unit_modulus = d.value.has_unit_modulus();
    d.magnitude = d.value.magnitude();
    d.log_magnitude = std::log(d.magnitude);
    inv.characters.push_back(std::move(d));
  }
  return inv;
}

// ---------------------------------------------------------------- triviality search

std::string to_string(TrivialityVerdict v) {
  switch (v) {
    case TrivialityVerdict::Nontrivial:
      return "nontrivial";
    case TrivialityVerdict::ReducedToTrivial:
      return "reduced_to_trivial";
    case TrivialityVerdict::Unknown:
      return "unknown";
  }
  return "?";
}

namespace {

// Dense n x n matrix over Z[G] with machine coefficients, entry (i, j) at
// offset (i * n + j) * |G|.
struct DenseState {
  std::vector<long> data;
  long score = 0;
  friend bool operator<(const DenseState& a, const DenseState& b) {
    return a.score != b.score ? a.score < b.score : a.data < b.data;
  }
};

class ElementarySearch {
 public:
  ElementarySearch(const FiniteGroup& g, std::size_t n) : g_(g), n_(n), k_(g.order()) {}

  long score(const std::vector<long>& d) const {
    long s = 0;
    for (long v : d) s += std::labs(v);
    return s;
  }

  bool monomial(const std::vector<long>& d) const {
    std::vector<bool> col_used(n_, false);
    for (std::size_t i = 0; i < n_; ++i) {
      std::size_t found = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        std::size_t terms = 0;
        long last = 0;
        for (std::size_t h = 0; h < k_; ++h)
          if (long v = d[(i * n_ + j) * k_ + h]; v != 0) {
            ++terms;
            last = v;
          }
        if (terms == 0) continue;
        if (terms > 1 || std::labs(last) != 1 || col_used[j]) return false;
        col_used[j] = true;
        ++found;
      }
      if (found != 1) return false;
    }
    return true;
  }

  // row_i += s * g * row_j  or  col_j += col_i * s * g
  bool apply(std::vector<long>& d, bool row, std::size_t i, std::size_t j, Element g, long s) const {
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t src = row ? (j * n_ + k) * k_ : (k * n_ + i) * k_;
      const std::size_t dst = row ? (i * n_ + k) * k_ : (k * n_ + j) * k_;
      for (std::size_t h = 0; h < k_; ++h) {
        long v = d[src + h];
        if (v == 0) continue;
        Element target = row ? g_.mul(g, static_cast<Element>(h)) : g_.mul(static_cast<Element>(h), g);
        long& out = d[dst + target];
        out += s * v;
        if (std::labs(out) > (1L << 40)) return false;
      }
    }
    return true;
  }

  std::optional<std::size_t> run(DenseState start, std::size_t budget, std::size_t width) const {
    std::set<std::vector<long>> seen{start.data};
    std::vector<DenseState> beam{start};
    std::size_t nodes = 0;
    if (monomial(start.data)) return nodes;
    while (!beam.empty() && nodes < budget) {
      std::set<DenseState> next;
      for (const auto& st : beam)
        for (int row = 0; row < 2; ++row)
          for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
              if (i == j) continue;
              for (Element g = 0; g < k_; ++g)
                for (long s : {1L, -1L}) {
                  DenseState c{st.data, 0};
                  if (!apply(c.data, row == 0, i, j, g, s)) continue;
                  if (!seen.insert(c.data).second) continue;
                  ++nodes;
                  if (monomial(c.data)) return nodes;
                  c.score = score(c.data);
                  next.insert(std::move(c));
                  if (next.size() > width) next.erase(std::prev(next.end()));
                }
            }
      beam.assign(next.begin(), next.end());
    }
    return std::nullopt;
  }

 private:
  const FiniteGroup& g_;
  std::size_t n_;
  std::size_t k_;
};

}  // namespace

TrivialityReport is_trivial_candidate(const TorsionClass& tau, const Config& config) {
  TrivialityReport rep;
  TorsionInvariant inv = invariant(tau, config);
  for (std::size_t i = 0; i < inv.characters.size(); ++i)
    if (!inv.characters[i].unit_modulus) {
      rep.verdict = TrivialityVerdict::Nontrivial;
      rep.reason = "character " + std::to_string(i) + " has |chi(det)| = " +
                   std::to_string(static_cast<double>(inv.characters[i].magnitude)) + " != 1";
      return rep;
    }
  const FiniteGroup& g = *tau.group();
  for (std::size_t extra = 0; extra <= config.stabilization_cap; ++extra) {
    GroupRingMatrix a = block_diagonal(tau.representative(), GroupRingMatrix::identity(tau.group(), extra));
    const std::size_t n = a.rows();
    DenseState st;
    st.data.assign(n * n * g.order(), 0);
    bool fits = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [h, c] : a(i, j).terms()) {
          if (!c.get_den().fits_slong_p() || c.get_den() != 1 || !c.get_num().fits_slong_p()) fits = false;
          else st.data[(i * n + j) * g.order() + h] = c.get_num().get_si();
        }
    if (!fits) break;
    ElementarySearch search(g, n);
    st.score = search.score(st.data);
    auto found = search.run(st, config.search_node_budget / (config.stabilization_cap + 1), config.search_beam_width);
    if (found) {
      rep.nodes += *found;
      rep.verdict = TrivialityVerdict::ReducedToTrivial;
      rep.stabilization = extra;
      rep.reason = "elementary operations reach a signed permutation matrix";
      return rep;
    }
    rep.nodes += config.search_node_budget / (config.stabilization_cap + 1);
  }
  rep.reason = "all character norms are 1 and the bounded search did not reach a signed permutation matrix";
  return rep;
}

// ---------------------------------------------------------------- torsion of complexes

std::optional<GroupRingMatrix> solve_rows(const GroupRingMatrix& m, const GroupRingMatrix& targets, const Config& config) {
  const GroupPtr& g = m.group();
  if (targets.cols() != m.cols()) throw InvalidInput("solve_rows: width mismatch");
  GroupRingMatrix out(g, {}, targets.rows(), m.rows());
  if (targets.rows() == 0) return out;
  const IntMatrix r = regular_representation(m);
  for (std::size_t i = 0; i < targets.rows(); ++i) {
    IntVector rhs;
    for (std::size_t j = 0; j < targets.cols(); ++j) {
      IntVector v = targets(i, j).dense();
      rhs.insert(rhs.end(), v.begin(), v.end());
    }
    std::optional<IntVector> x;
    if (m.rows() == 0) {
      if (std::all_of(rhs.begin(), rhs.end(), [](const Integer& e) { return e == 0; })) x = IntVector{};
    } else {
      x = solve_left(r, rhs, config.bit_bound);
    }
    if (!x) return std::nullopt;
    for (std::size_t k = 0; k < m.rows(); ++k)
      out(i, k) = GroupRingElement::from_dense(g, std::span<const Integer>(x->data() + k * g->order(), g->order()));
  }
  return out;
}

namespace {

// Boundaries of a complex as a mutable list, out of degrees lo+1 .. hi.
struct WorkComplex {
  GroupPtr group;
  int lo = 0;
  std::vector<std::size_t> ranks;          // ranks[k - lo]
  std::vector<GroupRingMatrix> boundary;   // boundary[k - lo] : C_k -> C_{k-1}, k > lo

  GroupRingMatrix& d(int k) { return boundary[static_cast<std::size_t>(k - lo)]; }
  int hi() const { return lo + static_cast<int>(ranks.size()) - 1; }

  GroupRingMatrix without(const GroupRingMatrix& m, std::optional<std::size_t> row, std::optional<std::size_t> col) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != row) rows.push_back(i);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (j != col) cols.push_back(j);
    return m.submatrix(rows, cols);
  }

  // Cancels cell i of degree k against cell j of degree k-1 when d_k(i, j) = +-g.
  bool collapse_once() {
    for (int k = lo + 1; k <= hi(); ++k) {
      GroupRingMatrix& m = d(k);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
          auto unit = m(i, j).as_signed_element();
          if (!unit) continue;
          const GroupRingElement u_inv = GroupRingElement::basis(group, group->inv(unit->second), m(i, j).ring(), unit->first);
          for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == i || m(r, j).is_zero()) continue;
            const GroupRingElement c = -(m(r, j) * u_inv);
            for (std::size_t t = 0; t < m.cols(); ++t) m(r, t) += c * m(i, t);
            if (k < hi()) {
              GroupRingMatrix& up = d(k + 1);
              for (std::size_t t = 0; t < up.rows(); ++t) up(t, i) -= up(t, r) * c;
            }
          }
          for (std::size_t t = 0; t < m.cols(); ++t) {
            if (t == j || m(i, t).is_zero()) continue;
            const GroupRingElement e = -(u_inv * m(i, t));
            for (std::size_t r = 0; r < m.rows(); ++r) m(r, t) += m(r, j) * e;
            if (k - 1 > lo) {
              GroupRingMatrix& down = d(k - 1);
              for (std::size_t c2 = 0; c2 < down.cols(); ++c2) down(j, c2) -= e * down(t, c2);
            }
          }
          m = without(m, i, j);
          if (k < hi()) d(k + 1) = without(d(k + 1), std::nullopt, i);
          if (k - 1 > lo) d(k - 1) = without(d(k - 1), j, std::nullopt);
          ranks[static_cast<std::size_t>(k - lo)] -= 1;
          ranks[static_cast<std::size_t>(k - 1 - lo)] -= 1;
          return true;
        }
    }
    return false;
  }
};

}  // namespace

TorsionClass torsion_of_pair(const BasedChainComplex& c, int parity, const Config& config) {
  const GroupPtr& g = c.group();
  if (!is_acyclic(c, {}, Coefficients::Regular, config)) throw NotAcyclic("complex is not acyclic over Z[G]");
  WorkComplex w{g, c.bottom(), {}, {}};
  for (int d = c.bottom(); d <= c.top(); ++d) {
    w.ranks.push_back(c.rank(d));
    w.boundary.push_back(c.boundary(d));
  }
  auto span = [&] {
    int a = w.hi() + 1, b = w.lo - 1;
    for (int d = w.lo; d <= w.hi(); ++d)
      if (w.ranks[static_cast<std::size_t>(d - w.lo)] > 0) a = std::min(a, d), b = std::max(b, d);
    return b - a;
  };
  while (span() > 1 && w.collapse_once()) {
  }
  int lo = w.hi() + 1, hi = w.lo - 1;
  for (int d = w.lo; d <= w.hi(); ++d)
    if (w.ranks[static_cast<std::size_t>(d - w.lo)] > 0) {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  if (lo > hi) return TorsionClass::trivial(g, 0, parity);
  auto rank = [&](int d) { return d < w.lo || d > w.hi() ? std::size_t{0} : w.ranks[static_cast<std::size_t>(d - w.lo)]; };
  auto boundary = [&](int d) {
    return d <= w.lo || d > w.hi() ? GroupRingMatrix(g, {}, rank(d), rank(d - 1)) : w.d(d);
  };
  if (hi == lo + 1) {
    if (rank(lo) != rank(hi)) throw RankMismatch("two-term complex with unequal ranks");
    if (hi % 2 != 0) return TorsionClass(boundary(hi), parity);
    TorsionClass t(boundary(hi), parity);
    return TorsionClass(t.inverse(), parity);
  }
  std::vector<GroupRingMatrix> s;  // s[k - lo] : C_k -> C_{k+1}
  for (int k = lo; k < hi; ++k) {
    GroupRingMatrix target = GroupRingMatrix::identity(g, rank(k));
    if (k > lo) target = target - boundary(k) * s.back();
    auto sk = solve_rows(boundary(k + 1), target, config);
    if (!sk) throw NotAcyclic("no chain contraction in degree " + std::to_string(k));
    s.push_back(std::move(*sk));
  }
  std::vector<int> row_degrees, col_degrees;
  for (int k = lo; k <= hi; ++k) (k % 2 != 0 ? row_degrees : col_degrees).push_back(k);
  auto offsets = [&](const std::vector<int>& degs) {
    std::vector<std::size_t> off{0};
    for (int d : degs) off.push_back(off.back() + rank(d));
    return off;
  };
  auto ro = offsets(row_degrees), co = offsets(col_degrees);
  if (ro.back() != co.back()) throw RankMismatch("odd and even ranks differ");
  GroupRingMatrix m(g, {}, ro.back(), co.back());
  auto place = [&](const GroupRingMatrix& block, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) m(r0 + i, c0 + j) = block(i, j);
  };
  for (std::size_t ri = 0; ri < row_degrees.size(); ++ri) {
    const int k = row_degrees[ri];
    for (std::size_t ci = 0; ci < col_degrees.size(); ++ci) {
      if (col_degrees[ci] == k - 1) place(boundary(k), ro[ri], co[ci]);
      if (col_degrees[ci] == k + 1) place(s[static_cast<std::size_t>(k - lo)], ro[ri], co[ci]);
    }
  }
  return TorsionClass(std::move(m), parity);
}

}  // namespace quillen
