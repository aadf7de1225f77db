#include "quillen/chains.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "quillen/errors.hpp"
#include "quillen/modp.hpp"

namespace quillen {

// ---------------------------------------------------------------- complexes

BasedChainComplex::BasedChainComplex(GroupPtr group, RingSpec ring, int bottom, std::vector<GroupRingMatrix> boundaries,
                                     std::vector<std::vector<std::string>> labels)
    : group_(group ? std::move(group) : FiniteGroup::trivial()),
      ring_(std::move(ring)),
      bottom_(bottom),
      boundaries_(std::move(boundaries)),
      labels_(std::move(labels)) {
  validate();
}

BasedChainComplex BasedChainComplex::from_integer(int bottom, std::size_t bottom_rank, const std::vector<IntMatrix>& boundaries,
                                                  RingSpec ring) {
  auto g = FiniteGroup::trivial();
  std::vector<GroupRingMatrix> b{GroupRingMatrix(g, ring, bottom_rank, 0)};
  for (const auto& m : boundaries) b.push_back(GroupRingMatrix::from_integers(g, m, ring));
  return BasedChainComplex(g, ring, bottom, std::move(b));
}

BasedChainComplex BasedChainComplex::free_modules(GroupPtr group, int bottom, const std::vector<std::size_t>& ranks) {
  std::vector<GroupRingMatrix> b;
  for (std::size_t i = 0; i < ranks.size(); ++i) b.emplace_back(group, RingSpec{}, ranks[i], i == 0 ? 0 : ranks[i - 1]);
  return BasedChainComplex(group, {}, bottom, std::move(b));
}

void BasedChainComplex::validate() const {
  if (boundaries_.empty()) return;
  if (boundaries_[0].cols() != 0) throw InvalidBoundary("lowest boundary must map to the zero module");
  for (std::size_t i = 0; i < boundaries_.size(); ++i) {
    const auto& b = boundaries_[i];
    if (!same_group(b.group(), group_)) throw MixedGroups("boundary over a different group");
    if (i > 0 && b.cols() != boundaries_[i - 1].rows())
      throw InvalidBoundary("boundary out of degree " + std::to_string(bottom_ + static_cast<int>(i)) +
                            " has the wrong number of columns");
  }
  for (std::size_t i = 2; i < boundaries_.size(); ++i)
    if (!(boundaries_[i] * boundaries_[i - 1]).is_zero())
      throw InvalidBoundary("boundary composition is nonzero at degree " + std::to_string(bottom_ + static_cast<int>(i)));
  if (!labels_.empty()) {
    if (labels_.size() != boundaries_.size()) throw InvalidInput("label list does not match the degree range");
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (!labels_[i].empty() && labels_[i].size() != boundaries_[i].rows())
        throw InvalidInput("label count does not match rank in degree " + std::to_string(bottom_ + static_cast<int>(i)));
  }
}

std::size_t BasedChainComplex::rank(int d) const {
  if (d < bottom_ || d > top()) return 0;
  return boundaries_[static_cast<std::size_t>(d - bottom_)].rows();
}

GroupRingMatrix BasedChainComplex::boundary(int d) const {
  if (d < bottom_ || d > top()) return GroupRingMatrix(group_, ring_, rank(d), rank(d - 1));
  return boundaries_[static_cast<std::size_t>(d - bottom_)];
}

const std::vector<std::string>& BasedChainComplex::labels(int d) const {
  static const std::vector<std::string> none;
  if (labels_.empty() || d < bottom_ || d > top()) return none;
  return labels_[static_cast<std::size_t>(d - bottom_)];
}

std::string BasedChainComplex::label(int d, std::size_t i) const {
  const auto& l = labels(d);
  return i < l.size() ? l[i] : "e" + std::to_string(d) + "_" + std::to_string(i);
}

IntMatrix BasedChainComplex::integer_boundary(int d, Coefficients mode) const {
  GroupRingMatrix b = boundary(d);
  return mode == Coefficients::Trivial ? b.augmented() : regular_representation(b);
}

std::size_t BasedChainComplex::integer_rank(int d, Coefficients mode) const {
  return mode == Coefficients::Trivial ? rank(d) : rank(d) * group_->order();
}

long BasedChainComplex::euler_characteristic() const {
  long chi = 0;
  for (int d = bottom_; d <= top(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(rank(d));
  return chi;
}

BasedChainComplex BasedChainComplex::with_boundary(int d, const GroupRingMatrix& m) const {
  if (d < bottom_ || d > top()) throw InvalidInput("degree out of range");
  auto b = boundaries_;
  b[static_cast<std::size_t>(d - bottom_)] = m;
  return BasedChainComplex(group_, ring_, bottom_, std::move(b), labels_);
}

BasedChainComplex BasedChainComplex::widened(int lo, int hi) const {
  if (boundaries_.empty()) {
    std::vector<std::size_t> ranks(static_cast<std::size_t>(std::max(0, hi - lo + 1)), 0);
    auto z = free_modules(group_, lo, ranks);
    z.ring_ = ring_;
    return z;
  }
  lo = std::min(lo, bottom_);
  hi = std::max(hi, top());
  std::vector<GroupRingMatrix> b;
  std::vector<std::vector<std::string>> l;
  for (int d = lo; d <= hi; ++d) {
    b.push_back(d == lo ? GroupRingMatrix(group_, ring_, rank(d), 0) : boundary(d));
    l.push_back(labels(d));
  }
  bool any = std::any_of(l.begin(), l.end(), [](const auto& v) { return !v.empty(); });
  return BasedChainComplex(group_, ring_, lo, std::move(b), any ? l : std::vector<std::vector<std::string>>{});
}

// ---------------------------------------------------------------- homology

Integer HomologyGroup::torsion_order() const {
  Integer t = 1;
  for (const auto& f : factors)
    if (f != 0) t *= f;
  return t;
}

std::string HomologyGroup::to_string(const RingSpec& ring) const {
  if (factors.empty()) return "0";
  const std::string base = ring.kind() == RingSpec::Kind::Integers ? "Z" : ring.to_string();
  std::string out;
  std::size_t free = 0;
  for (const auto& f : factors) {
    if (f == 0) {
      ++free;
      continue;
    }
    if (!out.empty()) out += " + ";
    out += "Z/" + f.get_str();
  }
  if (free > 0) {
    std::string fs = base + (free > 1 ? "^" + std::to_string(free) : "");
    out = out.empty() ? fs : fs + " + " + out;
  }
  return out;
}

HomologyGroup HomologyReport::at(int d) const {
  if (d < bottom || d >= bottom + static_cast<int>(groups.size())) return {};
  return groups[static_cast<std::size_t>(d - bottom)];
}

bool HomologyReport::is_zero() const {
  return std::all_of(groups.begin(), groups.end(), [](const HomologyGroup& h) { return h.is_zero(); });
}

HomologyReport integer_homology(const std::vector<IntMatrix>& boundaries, int bottom, const RingSpec& ring,
                                const Config& config) {
  HomologyReport rep;
  rep.ring = ring;
  rep.bottom = bottom;
  const std::size_t n = boundaries.size();
  std::vector<std::size_t> rk(n + 1, 0);
  std::vector<IntVector> inv(n + 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (ring.kind() == RingSpec::Kind::ModP) {
      rk[i] = rank_mod_p(boundaries[i], ring.prime());
    } else {
      inv[i] = invariant_factors(boundaries[i], config.bit_bound);
      rk[i] = inv[i].size();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    HomologyGroup h;
    const std::size_t free = boundaries[i].rows() - rk[i] - rk[i + 1];
    if (ring.kind() != RingSpec::Kind::ModP)
      for (const auto& d : inv[i + 1]) {
        Integer f = ring.local_factor(d);
        if (f != 1) h.factors.push_back(f);
      }
    h.factors.insert(h.factors.end(), free, Integer(0));
    h.betti = free;
    rep.groups.push_back(std::move(h));
  }
  return rep;
}

HomologyReport homology(const BasedChainComplex& c, const RingSpec& ring, Coefficients mode, const Config& config) {
  std::vector<IntMatrix> b;
  for (int d = c.bottom(); d <= c.top(); ++d) b.push_back(c.integer_boundary(d, mode));
  auto rep = integer_homology(b, c.bottom(), ring, config);
  rep.mode = mode;
  return rep;
}

bool is_acyclic(const BasedChainComplex& c, const RingSpec& ring, Coefficients mode, const Config& config) {
  return homology(c, ring, mode, config).is_zero();
}

std::string to_string(Coefficients mode) { return mode == Coefficients::Trivial ? "trivial" : "regular"; }

// ---------------------------------------------------------------- chain maps

ChainMap::ChainMap(BasedChainComplex source, BasedChainComplex target, int bottom, std::vector<GroupRingMatrix> maps)
    : source_(std::move(source)), target_(std::move(target)), bottom_(bottom), maps_(std::move(maps)) {
  if (!same_group(source_.group(), target_.group())) throw MixedGroups("chain map between complexes over different groups");
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    int d = bottom_ + static_cast<int>(i);
    if (maps_[i].rows() != source_.rank(d) || maps_[i].cols() != target_.rank(d))
      throw InvalidInput("chain map has the wrong shape in degree " + std::to_string(d));
  }
  const int lo = std::min(source_.bottom(), target_.bottom());
  const int hi = std::max(source_.top(), target_.top());
  for (int d = lo + 1; d <= hi; ++d)
    if (!(source_.boundary(d) * at(d - 1) == at(d) * target_.boundary(d)))
      throw InvalidInput("chain map does not commute with boundaries in degree " + std::to_string(d));
}

ChainMap ChainMap::identity(const BasedChainComplex& c) {
  std::vector<GroupRingMatrix> m;
  for (int d = c.bottom(); d <= c.top(); ++d) m.push_back(GroupRingMatrix::identity(c.group(), c.rank(d), c.ring()));
  return ChainMap(c, c, c.bottom(), std::move(m));
}

ChainMap ChainMap::basis_inclusion(const BasedChainComplex& source, const BasedChainComplex& target,
                                   const std::vector<std::vector<std::size_t>>& image) {
  std::vector<GroupRingMatrix> m;
  for (int d = source.bottom(); d <= source.top(); ++d) {
    const auto& img = image.at(static_cast<std::size_t>(d - source.bottom()));
    if (img.size() != source.rank(d)) throw InvalidInput("inclusion image has the wrong length");
    GroupRingMatrix f(source.group(), source.ring(), source.rank(d), target.rank(d));
    for (std::size_t i = 0; i < img.size(); ++i) f(i, img.at(i)) = GroupRingElement::one(source.group(), source.ring());
    m.push_back(std::move(f));
  }
  return ChainMap(source, target, source.bottom(), std::move(m));
}

GroupRingMatrix ChainMap::at(int d) const {
  if (d < bottom_ || d >= bottom_ + static_cast<int>(maps_.size()))
    return GroupRingMatrix(source_.group(), source_.ring(), source_.rank(d), target_.rank(d));
  return maps_[static_cast<std::size_t>(d - bottom_)];
}

std::optional<std::vector<std::size_t>> ChainMap::basis_image(int d) const {
  GroupRingMatrix f = at(d);
  std::vector<std::size_t> img;
  std::set<std::size_t> used;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const auto& e = f(i, j);
      if (e.is_zero()) continue;
      if (hit || !(e.terms().size() == 1 && e.coefficient(0) == 1)) return std::nullopt;
      hit = j;
    }
    if (!hit || !used.insert(*hit).second) return std::nullopt;
    img.push_back(*hit);
  }
  return img;
}

BasedChainComplex mapping_cone(const ChainMap& f) {
  const auto& s = f.source();
  const auto& t = f.target();
  const int lo = std::min(t.bottom(), s.bottom() + 1);
  const int hi = std::max(t.top(), s.top() + 1);
  const auto& g = t.group();
  std::vector<GroupRingMatrix> b;
  std::vector<std::vector<std::string>> labels;
  for (int k = lo; k <= hi; ++k) {
    const std::size_t sr = s.rank(k - 1), tr = t.rank(k);
    const std::size_t sc = k == lo ? 0 : s.rank(k - 2), tc = k == lo ? 0 : t.rank(k - 1);
    GroupRingMatrix m(g, t.ring(), sr + tr, sc + tc);
    if (k > lo) {
      GroupRingMatrix ds = s.boundary(k - 1), fk = f.at(k - 1), dt = t.boundary(k);
      for (std::size_t i = 0; i < sr; ++i) {
        for (std::size_t j = 0; j < sc; ++j) m(i, j) = -ds(i, j);
        for (std::size_t j = 0; j < tc; ++j) m(i, sc + j) = fk(i, j);
      }
      for (std::size_t i = 0; i < tr; ++i)
        for (std::size_t j = 0; j < tc; ++j) m(sr + i, sc + j) = dt(i, j);
    }
    std::vector<std::string> l;
    for (std::size_t i = 0; i < sr; ++i) l.push_back("s:" + s.label(k - 1, i));
    for (std::size_t i = 0; i < tr; ++i) l.push_back(t.label(k, i));
    b.push_back(std::move(m));
    labels.push_back(std::move(l));
  }
  return BasedChainComplex(g, t.ring(), lo, std::move(b), std::move(labels));
}

BasedChainComplex quotient_by_cells(const BasedChainComplex& c, int bottom,
                                    const std::vector<std::vector<std::size_t>>& drop) {
  auto kept = [&](int d) {
    std::set<std::size_t> gone;
    if (d >= bottom && d < bottom + static_cast<int>(drop.size()))
      gone.insert(drop[static_cast<std::size_t>(d - bottom)].begin(), drop[static_cast<std::size_t>(d - bottom)].end());
    std::vector<std::size_t> k;
    for (std::size_t i = 0; i < c.rank(d); ++i)
      if (!gone.count(i)) k.push_back(i);
    return k;
  };
  std::vector<GroupRingMatrix> b;
  std::vector<std::vector<std::string>> labels;
  for (int d = c.bottom(); d <= c.top(); ++d) {
    auto rows = kept(d);
    auto cols = d == c.bottom() ? std::vector<std::size_t>{} : kept(d - 1);
    b.push_back(c.boundary(d).submatrix(rows, cols));
    std::vector<std::string> l;
    for (auto r : rows) l.push_back(c.label(d, r));
    labels.push_back(std::move(l));
  }
  return BasedChainComplex(c.group(), c.ring(), c.bottom(), std::move(b), std::move(labels));
}

// ---------------------------------------------------------------- long exact sequence

namespace {

// Homology of an integer complex over F_p with explicit representatives.
class FieldHomology {
 public:
  FieldHomology(std::vector<IntMatrix> boundaries, int bottom, std::uint32_t p)
      : d_(std::move(boundaries)), bottom_(bottom), p_(p) {
    for (std::size_t i = 0; i < d_.size(); ++i) {
      const std::size_t n = d_[i].rows();
      IntMatrix z = left_kernel_mod_p(d_[i], p);
      IntMatrix in = i + 1 < d_.size() ? d_[i + 1] : IntMatrix(0, n);
      ModPEchelon e(p, n);
      for (std::size_t r = 0; r < in.rows(); ++r) e.insert(row_mod(in, r));
      std::vector<IntVector> reps;
      for (std::size_t r = 0; r < z.rows(); ++r)
        if (e.insert(row_mod(z, r))) reps.push_back(z.row_vector(r));
      reps_.push_back(IntMatrix::from_rows(reps, n));
      system_.push_back(IntMatrix::from_rows(reps, n).stacked(in));
    }
  }

  std::size_t dim(int d) const { return valid(d) ? reps_[idx(d)].rows() : 0; }
  std::size_t size(int d) const { return valid(d) ? d_[idx(d)].rows() : 0; }
  const IntMatrix& reps(int d) const { return reps_[idx(d)]; }
  const IntMatrix& boundary(int d) const { return d_[idx(d)]; }
  bool valid(int d) const { return d >= bottom_ && d < bottom_ + static_cast<int>(d_.size()); }

  /// Coordinates of the class of a cycle.
  IntVector coords(int d, const IntVector& cycle) const {
    const std::size_t h = dim(d);
    if (h == 0) return {};
    auto y = solve_left_mod_p(system_[idx(d)], cycle, p_);
    if (!y) throw Error("internal: vector is not a cycle");
    return IntVector(y->begin(), y->begin() + static_cast<std::ptrdiff_t>(h));
  }

 private:
  std::size_t idx(int d) const { return static_cast<std::size_t>(d - bottom_); }
  std::vector<std::uint32_t> row_mod(const IntMatrix& m, std::size_t r) const {
    std::vector<std::uint32_t> v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = reduce_mod(m(r, j), p_);
    return v;
  }

  std::vector<IntMatrix> d_;
  int bottom_;
  std::uint32_t p_;
  std::vector<IntMatrix> reps_;
  std::vector<IntMatrix> system_;
};

std::vector<std::size_t> expand(const std::vector<std::size_t>& idx, std::size_t mult) {
  std::vector<std::size_t> out;
  for (auto i : idx)
    for (std::size_t g = 0; g < mult; ++g) out.push_back(i * mult + g);
  return out;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& used, std::size_t n) {
  std::set<std::size_t> u(used.begin(), used.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!u.count(i)) out.push_back(i);
  return out;
}

IntMatrix restrict_matrix(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IntMatrix r(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = m(rows[i], cols[j]);
  return r;
}

}  // namespace

LesReport les_consistency(const ChainMap& x_to_y, const ChainMap& y_to_z, Coefficients mode, const Config& config) {
  const auto& x = x_to_y.source();
  const auto& y = x_to_y.target();
  const auto& z = y_to_z.target();
  if (!(y_to_z.source().rank(y.bottom()) == y.rank(y.bottom())))
    throw InvalidInput("inclusions are not composable");
  const int lo = std::min({x.bottom(), y.bottom(), z.bottom()});
  const int hi = std::max({x.top(), y.top(), z.top()});
  const std::size_t mult = mode == Coefficients::Regular ? z.group()->order() : 1;

  // cell bookkeeping per degree, in integer (expanded) indices of Z
  struct Cells {
    std::vector<std::size_t> a_in_z, b_in_z, c_in_z;
  };
  std::vector<Cells> cells;
  std::vector<IntMatrix> zb;
  for (int d = lo; d <= hi; ++d) {
    auto xy = x_to_y.basis_image(d);
    auto yz = y_to_z.basis_image(d);
    if (!xy || !yz) throw InvalidInput("long exact sequence check needs basis inclusions");
    std::vector<std::size_t> x_in_z, y_in_z = *yz;
    for (auto i : *xy) x_in_z.push_back(yz->at(i));
    const std::size_t nz = z.rank(d);
    Cells c;
    std::vector<std::size_t> y_minus_x;
    std::set<std::size_t> xs(x_in_z.begin(), x_in_z.end());
    for (auto i : y_in_z)
      if (!xs.count(i)) y_minus_x.push_back(i);
    std::sort(y_minus_x.begin(), y_minus_x.end());
    c.a_in_z = expand(y_minus_x, mult);
    c.b_in_z = expand(complement(x_in_z, nz), mult);
    c.c_in_z = expand(complement(y_in_z, nz), mult);
    cells.push_back(std::move(c));
    zb.push_back(z.integer_boundary(d, mode));
  }
  auto cell = [&](int d) -> const Cells& { return cells[static_cast<std::size_t>(d - lo)]; };
  auto relative = [&](auto pick) {
    std::vector<IntMatrix> b;
    for (int d = lo; d <= hi; ++d) {
      const auto& rows = pick(cell(d));
      std::vector<std::size_t> cols = d == lo ? std::vector<std::size_t>{} : pick(cell(d - 1));
      b.push_back(restrict_matrix(zb[static_cast<std::size_t>(d - lo)], rows, cols));
    }
    return b;
  };
  auto ab = relative([](const Cells& c) -> const std::vector<std::size_t>& { return c.a_in_z; });
  auto bb = relative([](const Cells& c) -> const std::vector<std::size_t>& { return c.b_in_z; });
  auto cb = relative([](const Cells& c) -> const std::vector<std::size_t>& { return c.c_in_z; });

  LesReport rep;
  std::set<std::uint32_t> primes{1000003};
  for (const auto* sys : {&ab, &bb, &cb})
    for (const auto& h : integer_homology(*sys, lo, RingSpec{}, config).groups)
      for (const auto& f : h.factors)
        if (f > 1)
          for (auto p : prime_divisors(f.get_ui())) primes.insert(static_cast<std::uint32_t>(p));
  rep.primes.assign(primes.begin(), primes.end());

  for (auto p : rep.primes) {
    FieldHomology ha(ab, lo, p), hb(bb, lo, p), hc(cb, lo, p);
    // position lookups
    auto position = [](const std::vector<std::size_t>& list) {
      std::map<std::size_t, std::size_t> m;
      for (std::size_t i = 0; i < list.size(); ++i) m[list[i]] = i;
      return m;
    };
    auto induced = [&](const FieldHomology& from, const FieldHomology& to, int d, const std::vector<std::size_t>& from_cells,
                       const std::vector<std::size_t>& to_cells) {
      auto pos = position(to_cells);
      IntMatrix m(from.dim(d), to.dim(d));
      for (std::size_t r = 0; r < from.dim(d); ++r) {
        IntVector v(to.size(d));
        for (std::size_t k = 0; k < from_cells.size(); ++k)
          if (auto it = pos.find(from_cells[k]); it != pos.end()) v[it->second] = from.reps(d)(r, k);
        auto c = to.coords(d, v);
        for (std::size_t j = 0; j < c.size(); ++j) m(r, j) = c[j];
      }
      return m;
    };
    auto connecting = [&](int d) {
      // H_d(C) -> H_{d-1}(A): lift to B, take the boundary, read off on A.
      IntMatrix m(hc.dim(d), ha.dim(d - 1));
      if (!ha.valid(d - 1)) return m;
      auto bpos = position(cell(d).b_in_z);
      auto apos_lo = position(cell(d - 1).a_in_z);
      const auto& bcells_lo = cell(d - 1).b_in_z;
      for (std::size_t r = 0; r < hc.dim(d); ++r) {
        IntVector lift(hb.size(d));
        for (std::size_t k = 0; k < cell(d).c_in_z.size(); ++k) lift[bpos.at(cell(d).c_in_z[k])] = hc.reps(d)(r, k);
        IntVector bd = multiply(lift, hb.boundary(d));
        IntVector a(ha.size(d - 1));
        for (std::size_t k = 0; k < bcells_lo.size(); ++k) {
          auto it = apos_lo.find(bcells_lo[k]);
          if (it != apos_lo.end())
            a[it->second] = bd[k];
          else if (reduce_mod(bd[k], p) != 0)
            throw Error("internal: connecting map leaves the subcomplex");
        }
        auto c = ha.coords(d - 1, a);
        for (std::size_t j = 0; j < c.size(); ++j) m(r, j) = c[j];
      }
      return m;
    };
    // sequence from the top: H_d(A) -> H_d(B) -> H_d(C) -> H_{d-1}(A) -> ...
    struct Node {
      std::string name;
      std::size_t dim;
    };
    std::vector<Node> nodes;
    std::vector<IntMatrix> maps;  // maps[i]: nodes[i] -> nodes[i+1]
    for (int d = hi; d >= lo; --d) {
      nodes.push_back({"H" + std::to_string(d) + "(Y,X)", ha.dim(d)});
      maps.push_back(induced(ha, hb, d, cell(d).a_in_z, cell(d).b_in_z));
      nodes.push_back({"H" + std::to_string(d) + "(Z,X)", hb.dim(d)});
      maps.push_back(induced(hb, hc, d, cell(d).b_in_z, cell(d).c_in_z));
      nodes.push_back({"H" + std::to_string(d) + "(Z,Y)", hc.dim(d)});
      if (d > lo) maps.push_back(connecting(d));
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      std::size_t in_rank = i == 0 ? 0 : rank_mod_p(maps[i - 1], p);
      std::size_t out_rank = i < maps.size() ? rank_mod_p(maps[i], p) : 0;
      bool composite_zero = true;
      if (i > 0 && i < maps.size() && maps[i - 1].rows() > 0 && maps[i].cols() > 0) {
        IntMatrix comp = maps[i - 1] * maps[i];
        for (std::size_t r = 0; r < comp.rows() && composite_zero; ++r)
          for (std::size_t c = 0; c < comp.cols(); ++c)
            if (reduce_mod(comp(r, c), p) != 0) {
              composite_zero = false;
              break;
            }
      }
      if (!composite_zero || in_rank + out_rank != nodes[i].dim) {
        rep.exact = false;
        rep.diagnostics.push_back("not exact at " + nodes[i].name + " over F_" + std::to_string(p));
      }
    }
  }
  return rep;
}

}  // namespace quillen
