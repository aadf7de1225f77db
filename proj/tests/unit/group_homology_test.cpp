#include <gtest/gtest.h>

#include "quillen/errors.hpp"
#include "quillen/group_homology.hpp"
#include "quillen/words.hpp"

using namespace quillen;

namespace {

IntVector schur(const std::string& name, const Config& config = {}) {
  return h2_group(builtin_group(name), {}, config).group.factors;
}

Config fallback_only() {
  Config c;
  c.dense_snf_entry_budget = 0;
  return c;
}

}  // namespace

// Values from tests/oracles/bar_oracle.py.
TEST(SchurMultiplier, MatchesBarOracle) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(schur("Z/" + std::to_string(n)), IntVector{}) << n;
  EXPECT_EQ(schur("Z/2xZ/2"), (IntVector{2}));
  EXPECT_EQ(schur("Z/3xZ/3"), (IntVector{3}));
  EXPECT_EQ(schur("Z/2xZ/4"), (IntVector{2}));
  EXPECT_EQ(schur("S3"), IntVector{});
  EXPECT_EQ(schur("D4"), (IntVector{2}));
}

TEST(SchurMultiplier, FurtherGroups) {
  EXPECT_EQ(schur("Q8"), IntVector{});
  EXPECT_EQ(schur("A4"), (IntVector{2}));
  EXPECT_EQ(schur("Z/2xZ/2xZ/2"), (IntVector{2, 2, 2}));
}

TEST(SchurMultiplier, FallbackRouteAgrees) {
  for (const auto& name : {"Z/6", "Z/2xZ/2", "Z/3xZ/3", "D4", "S3", "Q8", "A4"}) {
    auto dense = h2_group(builtin_group(name));
    auto sparse = h2_group(builtin_group(name), {}, fallback_only());
    EXPECT_EQ(sparse.group.factors, dense.group.factors) << name;
    EXPECT_NE(sparse.method, dense.method) << name;
  }
}

TEST(SchurMultiplier, ModPDimensions) {
  auto dim = [](const std::string& name, std::uint32_t p) {
    return h2_group(builtin_group(name), RingSpec::mod_p(p)).group.factors.size();
  };
  EXPECT_EQ(dim("Z/2", 2), 1u);
  EXPECT_EQ(dim("Z/4", 2), 1u);
  EXPECT_EQ(dim("Z/3", 2), 0u);
  EXPECT_EQ(dim("Z/2xZ/2", 2), 3u);
  EXPECT_EQ(dim("S3", 2), 1u);
  EXPECT_EQ(dim("S3", 3), 0u);
}

TEST(SchurMultiplier, BudgetIsEnforced) {
  Config c;
  c.bar_column_budget = 10;
  EXPECT_THROW(h2_group(builtin_group("A4"), {}, c), BudgetExceeded);
}

TEST(BarSlice, SquareZeroAndIndexing) {
  for (const auto& name : {"Z/3", "S3", "Z/2xZ/2"}) {
    BarSlice bar(builtin_group(name));
    EXPECT_TRUE(bar.check_square_zero()) << name;
    const std::size_t m = builtin_group(name)->order() - 1;
    EXPECT_EQ(bar.rank(2), m * m);
    std::vector<Element> tuple{1, static_cast<Element>(m)};
    EXPECT_EQ(bar.index(tuple), m - 1);
  }
}

TEST(H2Basis, GeneratorsHaveUnitCoordinates) {
  H2Basis basis(builtin_group("Z/2xZ/2xZ/2"));
  ASSERT_EQ(basis.size(), 3u);
  EXPECT_EQ(basis.order(), 8);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    IntVector c = basis.coordinates(basis.generator(i));
    for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c[j], i == j ? 1 : 0);
  }
}

TEST(InducedMap, IdentityAndQuotients) {
  for (const auto& name : {"Z/2xZ/2", "D4", "A4", "Z/3xZ/3"}) {
    auto id = h2_induced_map(FiniteGroupHom::identity(builtin_group(name)));
    EXPECT_TRUE(id.epi) << name;
    EXPECT_TRUE(id.iso) << name;
  }
  GroupPtr v4 = builtin_group("Z/2xZ/2"), z2 = builtin_group("Z/2"), one = builtin_group("1");
  auto from_trivial = h2_induced_map(FiniteGroupHom(one, v4, {0}));
  EXPECT_FALSE(from_trivial.epi);
  auto onto_z2 = FiniteGroupHom::from_generators(v4, z2, v4->generating_set(), {1, 0});
  EXPECT_TRUE(h2_induced_map(onto_z2).epi);

  // D4 -> D4/Z(D4) = V4 is zero on H_2: the cokernel is Z(D4) / [D4, Z(D4)] = Z/2.
  GroupPtr d4 = builtin_group("D4");
  const Element r = *d4->lookup("r"), s = *d4->lookup("s");
  auto to_v4 = FiniteGroupHom::from_generators(d4, v4, {r, s}, {v4->generating_set()[0], v4->generating_set()[1]});
  auto m = h2_induced_map(to_v4);
  EXPECT_FALSE(m.epi);
  EXPECT_TRUE(m.matrix.is_zero());
}

TEST(InducedMap, PresentationComplexSurjects) {
  for (const auto& name : {"Z/2xZ/2", "A4", "D4", "Q8"}) {
    auto m = h2_presentation_map(builtin_presentation(name));
    EXPECT_TRUE(m.epi) << name;
  }
}

TEST(Criteria, MooreAndSphere) {
  for (int n = 2; n <= 8; ++n) EXPECT_TRUE(moore_criterion(builtin_group("Z/" + std::to_string(n))));
  EXPECT_FALSE(moore_criterion(builtin_group("Z/2xZ/2")));
  EXPECT_TRUE(moore_criterion(builtin_group("Q8")));
  EXPECT_TRUE(homology_sphere_criterion(builtin_group("1")));
  EXPECT_FALSE(homology_sphere_criterion(builtin_group("Z/5")));
  EXPECT_FALSE(homology_sphere_criterion(builtin_group("A4")));
  EXPECT_TRUE(is_superperfect(builtin_group("1")));
}

TEST(Criteria, KnotGroups) {
  auto trefoil = parse_presentation({"x", "y"}, {"x y x y^-1 x^-1 y^-1"});
  GroupPtr s3 = builtin_group("S3");
  GroupHom probe(trefoil, s3, {*s3->lookup("s"), s3->mul(*s3->lookup("s"), *s3->lookup("r"))});
  auto witness = parse_word("x", trefoil.generator_names);
  auto pass = knot_group_criterion(trefoil, witness, {probe});
  EXPECT_EQ(pass.verdict, KnotVerdict::PassWithCertificate);
  EXPECT_EQ(pass.h1, (IntVector{0}));

  auto free2 = parse_presentation({"a", "b"}, {});
  EXPECT_EQ(knot_group_criterion(free2, std::nullopt, {}).verdict, KnotVerdict::Refuted);

  auto z_times_z2 = parse_presentation({"a", "b"}, {"b^2", "a b a^-1 b^-1"});
  EXPECT_EQ(knot_group_criterion(z_times_z2, std::nullopt, {}).verdict, KnotVerdict::Refuted);
}

TEST(InvariantFactors, FromPrimePowers) {
  EXPECT_EQ(invariant_factors_from_prime_powers({2, 4, 3}), (IntVector{2, 12}));
  EXPECT_EQ(invariant_factors_from_prime_powers({}), IntVector{});
  EXPECT_EQ(invariant_factors_from_prime_powers({5, 25, 5}), (IntVector{5, 5, 25}));
}
