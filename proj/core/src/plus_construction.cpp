#include "quillen/plus_construction.hpp"

#include <algorithm>

#include "quillen/errors.hpp"
#include "quillen/modp.hpp"
#include "quillen/words.hpp"

namespace quillen {

namespace {

// Membership in the R-span of the rows of a fixed integer matrix.
class SpanTester {
 public:
  SpanTester(const IntMatrix& rows, RingSpec ring, const Config& config) : ring_(std::move(ring)), cols_(rows.cols()) {
    if (ring_.kind() == RingSpec::Kind::ModP) {
      rank_ = rank_mod_p(rows, ring_.prime());
      rows_ = rows;
      return;
    }
    SmithOptions o;
    o.bit_bound = config.bit_bound;
    snf_ = smith_normal_form(rows, o);
  }

  bool contains(std::span<const Integer> v) const {
    if (ring_.kind() == RingSpec::Kind::ModP) {
      IntMatrix m = rows_.stacked(IntMatrix::from_rows({IntVector(v.begin(), v.end())}, cols_));
      return rank_mod_p(m, ring_.prime()) == rank_;
    }
    IntVector w = multiply(v, snf_.right);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 0) continue;
      if (i >= snf_.rank) return false;
      Integer d = ring_.local_factor(snf_.diagonal(i, i));
      if (!mpz_divisible_p(w[i].get_mpz_t(), d.get_mpz_t())) return false;
    }
    return true;
  }

 private:
  RingSpec ring_;
  std::size_t cols_;
  SmithDecomposition snf_;
  IntMatrix rows_;
  std::size_t rank_ = 0;
};

IntMatrix kernel_over(const IntMatrix& d, const RingSpec& ring, const Config& config) {
  if (d.cols() == 0) return IntMatrix::identity(d.rows());
  if (ring.kind() == RingSpec::Kind::ModP) return left_kernel_mod_p(d, ring.prime());
  return left_kernel(d, config.bit_bound);
}

IntMatrix columns(const IntMatrix& m, std::size_t first) { return m.col_block(first, m.cols() - first); }

// Invariant factors of span(j) / span(l) for lattices l inside j (0 for each lost rank).
IntVector lattice_index(const IntMatrix& j, const IntMatrix& l, const RingSpec& ring, const Config& config) {
  if (ring.kind() == RingSpec::Kind::ModP) {
    std::size_t gap = rank_mod_p(j, ring.prime()) - rank_mod_p(l, ring.prime());
    return IntVector(gap, Integer(0));
  }
  SmithOptions o;
  o.bit_bound = config.bit_bound;
  auto sj = smith_normal_form(j, o);
  IntMatrix basis = (sj.left * j).row_block(0, sj.rank);
  std::vector<IntVector> coords;
  for (std::size_t i = 0; i < l.rows(); ++i) {
    auto c = solve_left(basis, l.row(i), config.bit_bound);
    if (!c) throw Error("spherical class outside im j1");
    coords.push_back(*c);
  }
  IntVector f = invariant_factors(IntMatrix::from_rows(coords, sj.rank), config.bit_bound);
  IntVector out;
  for (const auto& d : f) {
    Integer x = ring.local_factor(d);
    if (x != 1) out.push_back(x);
  }
  out.insert(out.end(), sj.rank - f.size(), Integer(0));
  return out;
}

GroupRingMatrix chain_rows(const GroupPtr& g, const IntMatrix& vecs, std::size_t cells) {
  GroupRingMatrix out(g, {}, vecs.rows(), cells);
  for (std::size_t i = 0; i < vecs.rows(); ++i)
    for (std::size_t c = 0; c < cells; ++c)
      out(i, c) = GroupRingElement::from_dense(g, vecs.row(i).subspan(c * g->order(), g->order()));
  return out;
}

std::vector<std::vector<std::size_t>> x_cells(const FinitePresentation& p) {
  std::vector<std::size_t> gens(p.generator_count), rels(p.relators.size());
  for (std::size_t i = 0; i < gens.size(); ++i) gens[i] = i;
  for (std::size_t i = 0; i < rels.size(); ++i) rels[i] = i;
  return {{0}, gens, rels};
}

}  // namespace

// ---------------------------------------------------------------- homology equivalences

HomologyTargetResult homology_equivalence_target(const GroupHom& alpha, const RingSpec& ring, const Config& config) {
  const FinitePresentation& p = alpha.source();
  const GroupPtr& g = alpha.target();
  validate_realization(*g, config);
  const std::size_t n = p.generator_count, r = p.relators.size();
  HomologyTargetResult res{alpha, build_presentation_complex(alpha).complex, {}, {}, {}};
  auto& rep = res.report;
  rep.ring = ring;

  // W: new generators for the part of G outside the image, then a Schreier
  // presentation of G on all generator images.
  std::vector<Element> gens = alpha.images();
  Subgroup image = subgroup_generated(g, gens);
  std::vector<Element> extras;
  for (Element h : g->generating_set())
    if (!image.contains(h)) {
      extras.push_back(h);
      gens.push_back(h);
      image = subgroup_generated(g, gens);
    }
  bool iso = false;
  if (extras.empty()) {
    auto pi = enumerate_presentation(p, config.coset_limit);
    iso = pi && pi->target()->order() == g->order();
    rep.notes.push_back(pi ? "source group has order " + std::to_string(pi->target()->order())
                           : "coset enumeration of the source did not finish");
  }
  FinitePresentation wp = p;
  if (!iso) {
    for (std::size_t i = 0; i < extras.size(); ++i) wp.generator_names.push_back("y" + std::to_string(i));
    if (wp.generator_names.size() < n + extras.size()) {
      wp.generator_names.clear();
      for (std::uint32_t i = 0; i < n; ++i) wp.generator_names.push_back(p.name(i));
      for (std::size_t i = 0; i < extras.size(); ++i) wp.generator_names.push_back("y" + std::to_string(i));
    }
    wp.generator_count = n + extras.size();
    for (auto& rel : schreier_presentation(*g, gens, wp.generator_names).relators) wp.relators.push_back(rel);
  }
  rep.w_equals_x = iso;
  res.w_hom = GroupHom(wp, g, gens);
  const BasedChainComplex w = build_presentation_complex(res.w_hom).complex;
  const std::size_t new_rels = wp.relators.size() - r;
  for (std::size_t i = 0; i < extras.size(); ++i)
    res.added_cells.push_back({1, {w.boundary(1)(n + i, 0)}, w.label(1, n + i)});
  for (std::size_t i = 0; i < new_rels; ++i) {
    std::vector<GroupRingElement> row;
    for (std::size_t j = 0; j < wp.generator_count; ++j) row.push_back(w.boundary(2)(r + i, j));
    res.added_cells.push_back({2, std::move(row), w.label(2, r + i)});
  }

  // im j1 and the spherical classes inside H_2(W, X; R).
  const IntMatrix d2 = w.boundary(2).augmented();
  const IntMatrix j1 = columns(kernel_over(d2, ring, config), r);
  const IntMatrix spherical = left_kernel(regular_representation(w.boundary(2)), config.bit_bound);
  IntMatrix sph_aug(spherical.rows(), wp.relators.size());
  for (std::size_t i = 0; i < spherical.rows(); ++i)
    for (std::size_t c = 0; c < wp.relators.size(); ++c)
      for (std::size_t h = 0; h < g->order(); ++h) sph_aug(i, c) += spherical(i, c * g->order() + h);
  const IntMatrix l = columns(sph_aug, r);
  SpanTester in_l(l, ring, config);
  for (std::size_t i = 0; i < j1.rows(); ++i)
    if (!in_l.contains(j1.row(i))) {
      ObstructionData data;
      data.kind = "h2_cokernel";
      data.description = "a class of im j1 in H_2(W,X;" + ring.to_string() +
                         ") is not spherical; H_2(alpha) is not onto. Moduli: index of the spherical classes";
      data.vectors.push_back(j1.row_vector(i));
      data.moduli = lattice_index(j1, l, ring, config);
      throw NotLiftable("H_2 of the source does not map onto H_2(G; " + ring.to_string() + ")", std::move(data));
    }

  // SNF-pivot basis of im j1 with its lifts to ker d2 over Z[G].
  IntMatrix lifts;
  if (ring.kind() == RingSpec::Kind::ModP) {
    std::vector<IntVector> rows;
    for (auto i : independent_rows_mod_p(l, ring.prime())) rows.push_back(spherical.row_vector(i));
    lifts = IntMatrix::from_rows(rows, spherical.cols());
  } else if (l.rows() > 0) {
    SmithOptions o;
    o.bit_bound = config.bit_bound;
    auto s = smith_normal_form(l, o);
    lifts = (s.left * spherical).row_block(0, s.rank);
  } else {
    lifts = IntMatrix(0, spherical.cols());
  }
  GroupRingMatrix lift_rows = chain_rows(g, lifts, wp.relators.size());
  std::vector<AttachmentRecord> threes;
  for (std::size_t i = 0; i < lift_rows.rows(); ++i) {
    std::vector<GroupRingElement> row;
    for (std::size_t c = 0; c < lift_rows.cols(); ++c) row.push_back(lift_rows(i, c));
    threes.push_back({3, std::move(row), "b" + std::to_string(i)});
  }
  res.y = threes.empty() ? w : attach_cells(w, threes);
  res.added_cells.insert(res.added_cells.end(), threes.begin(), threes.end());

  // Verification: H_q(Y, X) = 0 for q >= 3 and im b = 0.
  const BasedChainComplex rel = quotient_by_cells(res.y, 0, x_cells(p));
  rep.relative_homology = homology(rel, ring, Coefficients::Trivial, config);
  rep.relative_vanishes = true;
  for (int q = 3; q <= rel.top(); ++q) rep.relative_vanishes = rep.relative_vanishes && rep.relative_homology.at(q).is_zero();
  const IntMatrix y_cycles = columns(kernel_over(res.y.boundary(2).augmented(), ring, config), r);
  const IntMatrix rel_d3 = columns(res.y.boundary(3).augmented(), r);
  SpanTester in_rel(rel_d3, ring, config);
  rep.im_b_zero = true;
  for (std::size_t i = 0; i < y_cycles.rows(); ++i) rep.im_b_zero = rep.im_b_zero && in_rel.contains(y_cycles.row(i));
  rep.x_homology = homology(res.x, ring, Coefficients::Trivial, config);
  rep.y_homology = homology(res.y, ring, Coefficients::Trivial, config);
  rep.higher_homology_matches = true;
  for (int q = 2; q <= std::max(res.y.top(), 2); ++q)
    rep.higher_homology_matches = rep.higher_homology_matches && rep.x_homology.at(q) == rep.y_homology.at(q);
  rep.h1_y = homology(res.y, {}, Coefficients::Trivial, config).at(1).factors;
  rep.h1_group = abelianization(*g);
  if (!rep.relative_vanishes || !rep.im_b_zero || !rep.higher_homology_matches || rep.h1_y != rep.h1_group)
    throw Error("homology equivalence verification failed");
  return res;
}

// ---------------------------------------------------------------- plus construction

PlusResult plus_with_torsion(const GroupHom& alpha, const std::vector<Word>& seeds, const GroupRingMatrix& a,
                             const Config& config) {
  const FinitePresentation& p = alpha.source();
  const GroupPtr& g = alpha.target();
  if (!same_group(a.group(), g)) throw MixedGroups("torsion matrix is over a different group");
  if (a.rows() != a.cols()) throw NotInvertible("torsion matrix must be square");
  if (!inverse(a)) throw NotInvertible("torsion matrix is not invertible over Z[G]");
  PlusResult res;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    if (alpha.apply(seeds[i]) != 0)
      throw InvalidInput("seed " + std::to_string(i) + " does not map to the identity of G");

  if (auto pi = enumerate_presentation(p, config.coset_limit)) {
    const GroupPtr& big = pi->target();
    auto phi = FiniteGroupHom::from_generators(big, g, pi->images(), alpha.images());
    std::vector<Element> seed_images;
    for (const auto& s : seeds) seed_images.push_back(pi->apply(s));
    Subgroup ps = normal_closure(big, seed_images);
    if (!is_perfect(ps)) {
      ObstructionData data;
      data.kind = "abelianization";
      data.description = "the normal closure of the seeds has nonzero abelianization";
      data.moduli = abelianization(*realize_subgroup(ps).group);
      throw NotPerfect("the seeds generate a subgroup that is not perfect", std::move(data));
    }
    std::size_t kernel = 0;
    for (auto x : phi.map) kernel += x == 0;
    if (!phi.is_surjective() || kernel != ps.order())
      throw InvalidInput("G is not the quotient of the source by the normal closure of the seeds");
    res.checks.push_back("source group of order " + std::to_string(big->order()) + ", P of order " +
                         std::to_string(ps.order()) + " is perfect and equals ker(alpha)");
  } else {
    res.checks.push_back("source group not enumerated; perfectness certified by the lifts");
  }

  res.x = build_presentation_complex(alpha).complex;
  const std::size_t r = p.relators.size();
  res.seed_count = seeds.size();
  const std::size_t big_n = std::max(seeds.size(), a.rows());
  res.padded = a.rows() < big_n ? block_diagonal(a, GroupRingMatrix::identity(g, big_n - a.rows())) : a;

  std::vector<AttachmentRecord> twos;
  for (std::size_t i = 0; i < big_n; ++i) {
    std::vector<GroupRingElement> row;
    for (std::uint32_t x = 0; x < p.generator_count; ++x)
      row.push_back(i < seeds.size() ? fox_derivative(seeds[i], x, alpha) : GroupRingElement::zero(g));
    twos.push_back({2, std::move(row),
                    i < seeds.size() ? "kill(" + format_word(seeds[i], p.generator_names) + ")"
                                     : "pad" + std::to_string(i - seeds.size())});
  }
  const BasedChainComplex y = attach_cells(res.x, twos);
  GroupRingMatrix lifts;
  try {
    lifts = kernel_lift_solve(y, r, res.padded, config);
  } catch (const NotLiftable& e) {
    throw NotPerfect(std::string("lift obstruction: ") + e.what(), e.data());
  }
  std::vector<AttachmentRecord> threes;
  for (std::size_t i = 0; i < big_n; ++i) {
    std::vector<GroupRingElement> row;
    for (std::size_t c = 0; c < lifts.cols(); ++c) row.push_back(lifts(i, c));
    threes.push_back({3, std::move(row), "x" + std::to_string(i)});
  }
  res.x_plus = attach_cells(y, threes);
  res.added_cells = twos;
  res.added_cells.insert(res.added_cells.end(), threes.begin(), threes.end());

  res.relative = quotient_by_cells(res.x_plus, 0, x_cells(p));
  if (!is_acyclic(res.relative, {}, Coefficients::Regular, config))
    throw Error("relative complex of the plus construction is not acyclic");
  res.checks.push_back("C(X+, X) is acyclic over Z[G]");
  res.torsion = torsion_of_pair(res.relative, 0, config);
  if (!(res.torsion.representative() == res.padded)) throw Error("torsion representative differs from the input");
  res.checks.push_back("torsion of C(X+, X) is represented by the padded input matrix");
  auto hx = homology(res.x, {}, Coefficients::Trivial, config);
  auto hp = homology(res.x_plus, {}, Coefficients::Trivial, config);
  for (int q = 0; q <= 3; ++q)
    if (!(hx.at(q) == hp.at(q))) throw Error("plus construction changed integral homology");
  res.checks.push_back("H_*(X; Z) = H_*(X+; Z)");
  return res;
}

// ---------------------------------------------------------------- framing

IntVector framing_correction(const FramingProblem& fp) {
  if (fp.a_mod2.rows() != fp.w.size()) throw InvalidInput("framing vector length differs from the number of spheres");
  IntVector w = fp.w;
  for (auto& x : w) x = reduce_mod(x, 2);
  if (fp.a_mod2.cols() == 0) {
    if (std::any_of(w.begin(), w.end(), [](const Integer& x) { return x != 0; }))
      throw NotASummand("no handles to correct a nonzero framing obstruction", {"framing", "w is nonzero", {w}, {}});
    return {};
  }
  auto eps = solve_left_mod_p(fp.a_mod2.transpose(), w, 2);
  if (!eps) {
    ObstructionData data{"framing", "w is not in the F_2 span of the columns of a; the spheres do not span a summand",
                         {w}, {Integer(2)}};
    throw NotASummand("framing system is inconsistent over F_2", std::move(data));
  }
  return *eps;
}

}  // namespace quillen
