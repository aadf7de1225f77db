#include <random>

#include <gtest/gtest.h>

#include "quillen/errors.hpp"
#include "quillen/fox.hpp"
#include "quillen/words.hpp"

using namespace quillen;

namespace {

GroupHom cyclic_presentation(int n) {
  auto p = parse_presentation({"x"}, {"x^" + std::to_string(n)});
  return GroupHom(p, builtin_group("Z/" + std::to_string(n)), {1});
}

}  // namespace

TEST(FoxDerivative, PowersAndConjugates) {
  GroupHom h = cyclic_presentation(5);
  GroupPtr z5 = h.target();
  auto d = fox_derivative(parse_word("x^3", {"x"}), 0, h);
  EXPECT_EQ(d, parse_group_ring_element("1 + t + t^2", z5));
  auto dinv = fox_derivative(parse_word("x^-2", {"x"}), 0, h);
  EXPECT_EQ(dinv, parse_group_ring_element("-t^4 - t^3", z5));
}

TEST(FoxDerivative, FundamentalFormula) {
  GroupHom h = builtin_presentation("A5");
  const auto& names = h.source().generator_names;
  GroupPtr g = h.target();
  std::mt19937 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    std::string text;
    for (int k = 0; k < 10; ++k) text += names[rng() % names.size()] + (rng() % 3 == 0 ? "^-1 " : " ");
    Word w = parse_word(text, names);
    GroupRingElement sum = GroupRingElement::zero(g);
    for (std::uint32_t j = 0; j < names.size(); ++j)
      sum += fox_derivative(w, j, h) * (GroupRingElement::basis(g, h.images()[j]) - GroupRingElement::one(g));
    EXPECT_EQ(sum, GroupRingElement::basis(g, h.apply(w)) - GroupRingElement::one(g)) << text;
  }
}

TEST(PresentationComplex, CyclicGroups) {
  for (int n = 2; n <= 8; ++n) {
    auto pc = build_presentation_complex(cyclic_presentation(n));
    auto h = homology(pc.complex, RingSpec::integers());
    EXPECT_EQ(h.at(0).factors, (IntVector{0}));
    EXPECT_EQ(h.at(1).factors, (IntVector{n}));
    EXPECT_TRUE(h.at(2).is_zero());

    auto cover = homology(pc.complex, RingSpec::integers(), Coefficients::Regular);
    EXPECT_TRUE(cover.at(1).is_zero());
    EXPECT_EQ(cover.at(2).betti, static_cast<std::size_t>(n - 1));
  }
}

TEST(PresentationComplex, A5HasSecondBettiNumberOne) {
  auto pc = build_presentation_complex(builtin_presentation("A5"));
  auto h = homology(pc.complex, RingSpec::integers());
  EXPECT_TRUE(h.at(1).is_zero());
  EXPECT_EQ(h.at(2).factors, (IntVector{0}));
  EXPECT_EQ(pc.complex.label(1, 0), "a");
}

TEST(AttachCells, ChecksBoundaries) {
  auto pc = build_presentation_complex(cyclic_presentation(3));
  GroupPtr z3 = pc.complex.group();
  AttachmentRecord bad{2, {GroupRingElement::one(z3)}, "bad"};
  EXPECT_THROW(attach_cells(pc.complex, {bad}), InvalidBoundary);

  // The relator cell times (1 - t) is a 2-cycle of the cover; a 3-cell may bound it.
  AttachmentRecord good{3, {parse_group_ring_element("1 - t", z3)}, "e3"};
  auto c = attach_cells(pc.complex, {good});
  EXPECT_EQ(c.rank(3), 1u);
  EXPECT_EQ(c.label(3, 0), "e3");
}

TEST(KernelLift, SolvesAndObstructs) {
  auto pc = build_presentation_complex(cyclic_presentation(3));
  GroupPtr z3 = pc.complex.group();
  AttachmentRecord trivial{2, {GroupRingElement::zero(z3)}, "pad"};
  auto c = attach_cells(pc.complex, {trivial});
  GroupRingMatrix target = GroupRingMatrix::identity(z3, 1);
  auto x = kernel_lift_solve(c, 1, target);
  EXPECT_TRUE((x * c.boundary(2)).is_zero());

  // Over <x | > -> Z/2 a 2-cell along (1 + t) x is a cycle but not a spherical one.
  auto free = build_presentation_complex(GroupHom(parse_presentation({"x"}, {}), builtin_group("Z/2"), {1}));
  GroupPtr z2 = free.complex.group();
  auto with_cell = attach_cells(free.complex, {AttachmentRecord{2, {parse_group_ring_element("1 + t", z2)}, "c"}});
  EXPECT_THROW(kernel_lift_solve(with_cell, 0, GroupRingMatrix::identity(z2, 1)), NotLiftable);
}
