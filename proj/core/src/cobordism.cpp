#include "quillen/cobordism.hpp"

#include "quillen/errors.hpp"

namespace quillen {

namespace {

std::vector<std::vector<std::size_t>> leading_cells(const BasedChainComplex& c) {
  std::vector<std::vector<std::size_t>> img;
  for (int d = c.bottom(); d <= c.top(); ++d) {
    std::vector<std::size_t> v(c.rank(d));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    img.push_back(std::move(v));
  }
  return img;
}

bool same_complex(const BasedChainComplex& a, const BasedChainComplex& b) {
  if (!same_group(a.group(), b.group())) return false;
  const int lo = std::min(a.bottom(), b.bottom()), hi = std::max(a.top(), b.top());
  for (int d = lo; d <= hi; ++d)
    if (a.rank(d) != b.rank(d) || !(a.boundary(d) == b.boundary(d))) return false;
  return true;
}

std::optional<Subgroup> realized_p(const GroupHom& alpha, const std::vector<Word>& seeds, const Config& config) {
  auto pi = enumerate_presentation(alpha.source(), config.coset_limit);
  if (!pi) return std::nullopt;
  std::vector<Element> imgs;
  for (const auto& s : seeds) imgs.push_back(pi->apply(s));
  return normal_closure(pi->target(), imgs);
}

}  // namespace

ChainCobordismModel product_model(const GroupHom& alpha_m, int parity) {
  auto c = build_presentation_complex(alpha_m).complex;
  auto id = ChainMap::identity(c);
  return {c, c, c, id, id, alpha_m, {}, parity};
}

VerifyReport verify_one_sided_h(const ChainCobordismModel& model, const Config& config) {
  VerifyReport rep;
  if (!is_acyclic(mapping_cone(model.incl_n), {}, Coefficients::Regular, config)) {
    rep.ok = false;
    rep.diagnostics.push_back("N -> W is not a chain equivalence over Z[G]");
  } else {
    rep.diagnostics.push_back("N -> W is a chain equivalence over Z[G]");
  }
  if (!is_acyclic(mapping_cone(model.incl_m), {}, Coefficients::Regular, config)) {
    rep.ok = false;
    rep.diagnostics.push_back("M -> W is not acyclic over Z[G]");
  } else {
    rep.diagnostics.push_back("M -> W is acyclic over Z[G]");
  }
  if (auto p = realized_p(model.alpha_m, model.seeds, config)) {
    if (is_perfect(*p)) {
      rep.diagnostics.push_back("P has order " + std::to_string(p->order()) + " and is perfect");
    } else {
      rep.ok = false;
      rep.diagnostics.push_back("P has order " + std::to_string(p->order()) + " and is not perfect");
    }
  } else {
    rep.diagnostics.push_back("pi_1(M) not enumerated; perfectness of P not checked");
  }
  return rep;
}

CobordismClass classify(const ChainCobordismModel& model, const Config& config) {
  VerifyReport v = verify_one_sided_h(model, config);
  if (!v.ok) {
    ObstructionData data{"one_sided_h", "", {}, {}};
    for (const auto& d : v.diagnostics) data.description += (data.description.empty() ? "" : "; ") + d;
    throw NotOneSidedH("model is not a one-sided h-cobordism", std::move(data));
  }
  return {model.seeds, realized_p(model.alpha_m, model.seeds, config),
          torsion_of_pair(mapping_cone(model.incl_n), model.parity, config)};
}

ChainCobordismModel realize(const GroupHom& alpha_m, const std::vector<Word>& seeds, const TorsionClass& tau,
                            const Config& config) {
  const TorsionClass t = tau.with_parity(tau.parity());
  const TorsionClass a = dual_sign(t);
  PlusResult plus = plus_with_torsion(alpha_m, seeds, a.representative(), config);
  const GroupPtr& g = alpha_m.target();
  const BasedChainComplex& w = plus.x_plus;
  ChainMap incl_m = ChainMap::basis_inclusion(plus.x, w, leading_cells(plus.x));

  // Rebase the top cells of W by the inverse of tau.
  const std::size_t top = w.rank(3);
  GroupRingMatrix twist = t.inverse();
  if (twist.rows() < top) twist = block_diagonal(twist, GroupRingMatrix::identity(g, top - twist.rows()));
  std::vector<GroupRingMatrix> b, maps;
  std::vector<std::vector<std::string>> labels;
  for (int d = 0; d <= 3; ++d) {
    b.push_back(d == 0 ? w.boundary(0) : (d == 3 ? twist * w.boundary(3) : w.boundary(d)));
    maps.push_back(d == 3 ? twist : GroupRingMatrix::identity(g, w.rank(d)));
    labels.push_back(w.labels(d));
  }
  BasedChainComplex n(g, {}, 0, std::move(b), std::move(labels));
  ChainMap incl_n(n, w, 0, std::move(maps));
  return {plus.x, w, n, incl_m, incl_n, alpha_m, seeds, t.parity()};
}

GlueReport glue(const ChainCobordismModel& first, const ChainCobordismModel& second, const Config& config) {
  if (!same_complex(first.m, second.m)) throw MismatchedBase("models do not share M");
  const GroupPtr& g = first.w.group();
  const int lo = 0, hi = std::max(first.w.top(), second.w.top());
  // Cells of X: those of W_1, then the cells of W_2 outside M.
  std::vector<std::vector<std::size_t>> second_index;
  std::vector<std::size_t> ranks;
  for (int d = lo; d <= hi; ++d) {
    auto m1 = first.incl_m.basis_image(d), m2 = second.incl_m.basis_image(d);
    if (!m1 || !m2) throw InvalidInput("M -> W is not a basis inclusion");
    std::vector<std::size_t> idx(second.w.rank(d), SIZE_MAX);
    for (std::size_t i = 0; i < m2->size(); ++i) idx[(*m2)[i]] = (*m1)[i];
    std::size_t next = first.w.rank(d);
    for (auto& v : idx)
      if (v == SIZE_MAX) v = next++;
    second_index.push_back(std::move(idx));
    ranks.push_back(next);
  }
  std::vector<GroupRingMatrix> b;
  for (int d = lo; d <= hi; ++d) {
    const auto k = static_cast<std::size_t>(d - lo);
    GroupRingMatrix m(g, {}, ranks[k], d == lo ? 0 : ranks[k - 1]);
    if (d > lo) {
      GroupRingMatrix b1 = first.w.boundary(d), b2 = second.w.boundary(d);
      for (std::size_t i = 0; i < b1.rows(); ++i)
        for (std::size_t j = 0; j < b1.cols(); ++j) m(i, j) = b1(i, j);
      for (std::size_t i = 0; i < b2.rows(); ++i) {
        const std::size_t row = second_index[k][i];
        if (row < first.w.rank(d)) continue;
        for (std::size_t j = 0; j < b2.cols(); ++j) m(row, second_index[k - 1][j]) = b2(i, j);
      }
    }
    b.push_back(std::move(m));
  }
  BasedChainComplex x(g, {}, lo, std::move(b));
  std::vector<GroupRingMatrix> maps;
  for (int d = lo; d <= hi; ++d) {
    GroupRingMatrix incl(g, {}, first.w.rank(d), x.rank(d));
    for (std::size_t i = 0; i < first.w.rank(d); ++i) incl(i, i) = GroupRingElement::one(g);
    maps.push_back(first.incl_n.at(d) * incl);
  }
  ChainMap n1_to_x(first.n, x, lo, std::move(maps));

  GlueReport rep;
  rep.observed = torsion_of_pair(mapping_cone(n1_to_x), first.parity, config);
  TorsionClass tau1 = classify(first, config).tau;
  TorsionClass w2_m = torsion_of_pair(mapping_cone(second.incl_m), first.parity, config);
  rep.expected = compose(tau1, w2_m);
  rep.observed_invariant = invariant(rep.observed, config);
  rep.expected_invariant = invariant(rep.expected, config);
  rep.formula_holds = rep.observed_invariant.matches(rep.expected_invariant);
  return rep;
}

std::vector<ClassIndex> enumerate_classes(const GroupPtr& pi, const Config& config) {
  std::vector<ClassIndex> out;
  for (const auto& p : enumerate_perfect_normal_subgroups(pi, config)) {
    ClassIndex c{p, quotient(pi, p).group, 0, std::nullopt, ""};
    auto chars = linear_characters(c.quotient);
    c.nontrivial_characters = chars.size() - 1;
    const std::size_t q = c.quotient->order();
    bool cyclic = false;
    for (Element e = 0; e < q && !cyclic; ++e) cyclic = c.quotient->element_order(e) == q;
    if (cyclic) {
      std::size_t divisors = 0;
      for (std::size_t d = 1; d <= q; ++d) divisors += q % d == 0;
      c.wh_rank = q / 2 + 1 - divisors;
    }
    c.description = "P of order " + std::to_string(p.order()) + ", quotient of order " + std::to_string(q) + "; " +
                    std::to_string(c.nontrivial_characters) + " nontrivial linear characters detect Wh";
    if (c.wh_rank) c.description += "; Wh of the cyclic quotient has rank " + std::to_string(*c.wh_rank);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace quillen
