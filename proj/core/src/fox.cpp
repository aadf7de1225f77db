#include "quillen/fox.hpp"

#include "quillen/errors.hpp"
#include "quillen/words.hpp"

namespace quillen {

GroupRingElement fox_derivative(const Word& w, std::uint32_t generator, const GroupHom& alpha) {
  const GroupPtr& g = alpha.target();
  GroupRingElement d = GroupRingElement::zero(g);
  Element prefix = 0;
  for (const auto& l : w.letters()) {
    const Element x = alpha.images().at(l.generator);
    const Element step = l.exponent > 0 ? x : g->inv(x);
    for (int k = 0; k < std::abs(l.exponent); ++k) {
      if (l.generator == generator) {
        if (l.exponent > 0)
          d.add_term(prefix, 1);
        else
          d.add_term(g->mul(prefix, step), -1);
      }
      prefix = g->mul(prefix, step);
    }
  }
  return d;
}

PresentationComplex build_presentation_complex(const GroupHom& alpha) {
  const auto& p = alpha.source();
  const GroupPtr& g = alpha.target();
  const std::size_t n = p.generator_count, r = p.relators.size();
  GroupRingMatrix d0(g, {}, 1, 0), d1(g, {}, n, 1), d2(g, {}, r, n);
  for (std::uint32_t x = 0; x < n; ++x) {
    d1(x, 0) = GroupRingElement::basis(g, alpha.images()[x]) - GroupRingElement::one(g);
  }
  std::vector<std::string> rel_labels;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::uint32_t x = 0; x < n; ++x) d2(i, x) = fox_derivative(p.relators[i], x, alpha);
    rel_labels.push_back(format_word(p.relators[i], p.generator_names));
  }
  std::vector<std::string> gen_labels;
  for (std::uint32_t x = 0; x < n; ++x) gen_labels.push_back(p.name(x));
  BasedChainComplex c(g, {}, 0, {d0, d1, d2}, {{"v"}, gen_labels, rel_labels});
  return {alpha, std::move(c)};
}

BasedChainComplex attach_cells(const BasedChainComplex& c, const std::vector<AttachmentRecord>& records) {
  int top = c.top();
  for (const auto& rec : records) top = std::max(top, rec.dimension);
  const BasedChainComplex wide = c.widened(c.bottom(), top);
  const GroupPtr& g = c.group();
  std::vector<GroupRingMatrix> b;
  std::vector<std::vector<std::string>> labels;
  for (int d = wide.bottom(); d <= wide.top(); ++d) {
    b.push_back(d == wide.bottom() ? GroupRingMatrix(g, c.ring(), wide.rank(d), 0) : wide.boundary(d));
    std::vector<std::string> l;
    for (std::size_t i = 0; i < wide.rank(d); ++i) l.push_back(wide.label(d, i));
    labels.push_back(std::move(l));
  }
  const int bottom = wide.bottom();
  for (const auto& rec : records) {
    if (rec.dimension <= bottom) throw InvalidInput("cannot attach cells at the bottom degree");
    const auto k = static_cast<std::size_t>(rec.dimension - bottom);
    GroupRingMatrix& m = b[k];
    if (rec.boundary_row.size() != m.cols())
      throw InvalidInput("attaching row for '" + rec.label + "' has length " + std::to_string(rec.boundary_row.size()) +
                         ", expected " + std::to_string(m.cols()));
    GroupRingMatrix row(g, c.ring(), 1, m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) row(0, j) = rec.boundary_row[j];
    if (k >= 1 && !(row * b[k - 1]).is_zero())
      throw InvalidBoundary("attaching map of '" + rec.label + "' is not a cycle");
    m = m.stacked(row);
    labels[k].push_back(rec.label.empty() ? "e" + std::to_string(rec.dimension) + "_" + std::to_string(m.rows() - 1)
                                          : rec.label);
    if (k + 1 < b.size()) b[k + 1] = b[k + 1].beside(GroupRingMatrix(g, c.ring(), b[k + 1].rows(), 1));
  }
  return BasedChainComplex(g, c.ring(), bottom, std::move(b), std::move(labels));
}

GroupRingMatrix kernel_lift_solve(const BasedChainComplex& c, std::size_t first_new, const GroupRingMatrix& targets,
                                  const Config& config) {
  const GroupPtr& g = c.group();
  const std::size_t n2 = c.rank(2);
  if (first_new > n2 || targets.cols() != n2 - first_new)
    throw InvalidInput("lift targets do not match the relative 2-cells");
  const GroupRingMatrix d2 = c.boundary(2);
  std::vector<std::size_t> old_rows(first_new), new_rows(n2 - first_new), all_cols(d2.cols());
  for (std::size_t i = 0; i < first_new; ++i) old_rows[i] = i;
  for (std::size_t i = first_new; i < n2; ++i) new_rows[i - first_new] = i;
  for (std::size_t j = 0; j < d2.cols(); ++j) all_cols[j] = j;
  const IntMatrix r_old = regular_representation(d2.submatrix(old_rows, all_cols));
  const GroupRingMatrix d2_new = d2.submatrix(new_rows, all_cols);

  GroupRingMatrix out(g, {}, targets.rows(), n2);
  for (std::size_t i = 0; i < targets.rows(); ++i) {
    GroupRingMatrix a = targets.row_block(i, 1);
    GroupRingMatrix image = a * d2_new;
    IntVector rhs;
    for (std::size_t j = 0; j < image.cols(); ++j) {
      IntVector v = image(0, j).dense();
      for (auto& e : v) rhs.push_back(-e);
    }
    std::optional<IntVector> x;
    if (first_new == 0) {
      if (std::all_of(rhs.begin(), rhs.end(), [](const Integer& e) { return e == 0; })) x = IntVector{};
    } else {
      x = solve_left(r_old, rhs, config.bit_bound);
    }
    if (!x) {
      ObstructionData data;
      data.kind = "relative_h1";
      data.description = "boundary of target row " + std::to_string(i) +
                         " is not a boundary in the subcomplex (coordinates over the group basis)";
      for (auto& e : rhs) e = -e;
      data.vectors.push_back(rhs);
      throw NotLiftable("target row " + std::to_string(i) + " does not lift to a 2-cycle", std::move(data));
    }
    for (std::size_t r = 0; r < first_new; ++r)
      out(i, r) = GroupRingElement::from_dense(g, std::span<const Integer>(x->data() + r * g->order(), g->order()));
    for (std::size_t r = first_new; r < n2; ++r) out(i, r) = targets(i, r - first_new);
  }
  return out;
}

}  // namespace quillen
