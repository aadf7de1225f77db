#include <random>
#include <set>

#include <gtest/gtest.h>

#include "quillen/errors.hpp"
#include "quillen/groups.hpp"
#include "quillen/words.hpp"

using namespace quillen;

namespace {

// Normal subgroup generated by all [x, n], closed by brute force.
std::vector<Element> brute_commutator_with(const FiniteGroup& g, const Subgroup& n) {
  std::set<Element> s{0};
  for (Element x = 0; x < g.order(); ++x)
    for (Element m : n.members) s.insert(g.mul(g.mul(x, m), g.mul(g.inv(x), g.inv(m))));
  bool grown = true;
  while (grown) {
    grown = false;
    std::vector<Element> cur(s.begin(), s.end());
    for (Element a : cur)
      for (Element b : cur)
        if (s.insert(g.mul(a, b)).second) grown = true;
  }
  return {s.begin(), s.end()};
}

const std::vector<std::string> kSmallGroups = {
    "1",       "Z/2",     "Z/3",     "Z/4",     "Z/6",     "Z/8",     "Z/12",    "Z/2xZ/2", "Z/2xZ/4",
    "Z/3xZ/3", "S3",      "D4",      "Q8",      "A4",      "S4",      "Z/2xS3",  "Z/3xS3",  "Z/2xA4",
    "Z/2xD4",  "Z/2xQ8",  "S3xZ/4",  "Z/2xZ/2xZ/2",
};

}  // namespace

TEST(FiniteGroup, BuiltinsAreGroups) {
  for (const auto& name : kSmallGroups) {
    GroupPtr g = builtin_group(name);
    EXPECT_TRUE(validate_realization(*g)) << name;
  }
  EXPECT_EQ(builtin_group("A5")->order(), 60u);
  EXPECT_EQ(builtin_group("Z/5xA5")->order(), 300u);
  EXPECT_THROW(builtin_group("nonsense"), InvalidInput);
}

TEST(FiniteGroup, RejectsNonAssociativeTable) {
  // A Latin square with identity 0 that is not a group (order 5 loop).
  FiniteGroup loop({{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}});
  EXPECT_FALSE(validate_realization(loop));
}

TEST(FiniteGroup, PermutationClosure) {
  GroupPtr s3 = FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, {"s", "r"});
  EXPECT_EQ(s3->order(), 6u);
  EXPECT_FALSE(s3->is_abelian());
  EXPECT_EQ(s3->element_order(*s3->lookup("r")), 3u);
}

TEST(Subgroups, FrozenSymmetricGroupFacts) {
  GroupPtr s3 = builtin_group("S3");
  const Element s = *s3->lookup("s");
  EXPECT_EQ(normal_closure(s3, {s}).order(), 6u);
  Subgroup whole = whole_group(s3);
  Subgroup derived = commutator_subgroup_with(s3, whole, whole);
  EXPECT_EQ(derived.order(), 3u);
  EXPECT_EQ(commutator_subgroup_with(s3, whole, derived).order(), 3u);
  EXPECT_TRUE(is_relatively_perfect(s3, derived));
  EXPECT_FALSE(is_perfect(derived));
}

TEST(Subgroups, WeightOne) {
  EXPECT_FALSE(weight_le_one(builtin_group("Z/2xZ/2")).has_value());
  EXPECT_TRUE(weight_le_one(builtin_group("Z/6")).has_value());
  EXPECT_TRUE(weight_le_one(builtin_group("A5")).has_value());
  EXPECT_TRUE(weight_le_one(builtin_group("S3")).has_value());
}

TEST(Subgroups, RelativelyPerfectMatchesBruteForce) {
  for (const auto& name : kSmallGroups) {
    GroupPtr g = builtin_group(name);
    for (const auto& n : enumerate_normal_subgroups(g)) {
      const bool brute = brute_commutator_with(*g, n) == n.members;
      EXPECT_EQ(is_relatively_perfect(g, n), brute) << name << " |N|=" << n.order();
    }
  }
}

TEST(Subgroups, PerfectNormalSubgroups) {
  auto a5 = enumerate_perfect_normal_subgroups(builtin_group("A5"));
  ASSERT_EQ(a5.size(), 2u);
  EXPECT_EQ(a5[0].order(), 1u);
  EXPECT_EQ(a5[1].order(), 60u);
  EXPECT_EQ(enumerate_perfect_normal_subgroups(builtin_group("S4")).size(), 1u);
  Config wide;
  wide.enumeration_bound = 300;
  EXPECT_EQ(enumerate_perfect_normal_subgroups(builtin_group("Z/5xA5"), wide).size(), 2u);
  EXPECT_THROW(enumerate_perfect_normal_subgroups(builtin_group("Z/5xA5")), OrderTooLarge);
}

TEST(Subgroups, SylowAndQuotient) {
  GroupPtr s4 = builtin_group("S4");
  EXPECT_EQ(sylow_subgroup(s4, 2).order(), 8u);
  EXPECT_EQ(sylow_subgroup(s4, 3).order(), 3u);
  Subgroup whole = whole_group(s4);
  Quotient q = quotient(s4, commutator_subgroup_with(s4, whole, whole));
  EXPECT_EQ(q.group->order(), 2u);
  for (Element a = 0; a < s4->order(); ++a)
    for (Element b = 0; b < s4->order(); ++b)
      EXPECT_EQ(q.projection[s4->mul(a, b)], q.group->mul(q.projection[a], q.projection[b]));
  EXPECT_THROW(quotient(s4, sylow_subgroup(s4, 3)), NotNormal);
}

TEST(Subgroups, ConjugacyClassesPartition) {
  for (const auto& name : kSmallGroups) {
    GroupPtr g = builtin_group(name);
    std::size_t total = 0;
    for (const auto& c : conjugacy_classes(*g)) total += c.size();
    EXPECT_EQ(total, g->order()) << name;
  }
  EXPECT_EQ(conjugacy_classes(*builtin_group("A5")).size(), 5u);
}

TEST(Presentations, Abelianization) {
  auto p = parse_presentation({"x"}, {"x^6"});
  EXPECT_EQ(abelianization(p), (IntVector{6}));
  EXPECT_EQ(abelianization(parse_presentation({"a", "b"}, {})), (IntVector{0, 0}));
  EXPECT_EQ(abelianization(*builtin_group("A5")), IntVector{});
  EXPECT_EQ(abelianization(*builtin_group("Z/2xZ/4")), (IntVector{2, 4}));
}

TEST(Presentations, CosetEnumeration) {
  for (const auto& [name, order] : std::vector<std::pair<std::string, std::size_t>>{
           {"A5", 60}, {"S4", 24}, {"Q8", 8}, {"Z/5xA5", 300}, {"S3", 6}}) {
    GroupHom h = builtin_presentation(name);
    auto e = enumerate_presentation(h.source());
    ASSERT_TRUE(e.has_value()) << name;
    EXPECT_EQ(e->target()->order(), order) << name;
    EXPECT_TRUE(validate_realization(*e->target()));
  }
  EXPECT_FALSE(enumerate_presentation(parse_presentation({"a", "b"}, {"a^2"}), 500).has_value());
}

TEST(Presentations, SchreierPresentationDefinesTheGroup) {
  for (const auto& name : {"S3", "Q8", "A4", "Z/2xZ/2"}) {
    GroupPtr g = builtin_group(name);
    auto gens = g->generating_set();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < gens.size(); ++i) names.push_back("x" + std::to_string(i));
    FinitePresentation p = schreier_presentation(*g, gens, names);
    GroupHom h(p, g, gens);
    EXPECT_TRUE(h.is_surjective());
    auto e = enumerate_presentation(p);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->target()->order(), g->order()) << name;
  }
}

TEST(Homomorphisms, LawAndComposition) {
  GroupPtr s3 = builtin_group("S3"), z2 = builtin_group("Z/2");
  auto sign = FiniteGroupHom::from_generators(s3, z2, {*s3->lookup("s"), *s3->lookup("r")}, {1, 0});
  EXPECT_TRUE(sign.is_surjective());
  auto id = FiniteGroupHom::identity(s3);
  EXPECT_EQ(id.then(sign).map, sign.map);
  EXPECT_THROW(FiniteGroupHom::from_generators(s3, z2, {*s3->lookup("r")}, {1}), InvalidInput);

  auto p = parse_presentation({"x"}, {"x^4"});
  EXPECT_THROW(GroupHom(p, builtin_group("Z/3"), {1}), InvalidInput);
}

TEST(Words, ParseAndFormat) {
  std::vector<std::string> names{"a", "b"};
  Word w = parse_word("[a, b] a^2", names);
  EXPECT_EQ(format_word(w, names), "a b a^-1 b^-1 a^2");
  EXPECT_EQ(format_word(parse_word("(a b)^-1", names), names), "b^-1 a^-1");
  EXPECT_THROW(parse_word("a c", names), InvalidInput);
  EXPECT_THROW(parse_word("a^", names), InvalidInput);
}

TEST(Words, RandomWordsEvaluateConsistently) {
  GroupHom h = builtin_presentation("A5");
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    for (int k = 0; k < 8; ++k) text += std::string(rng() % 2 ? "a" : "b") + (rng() % 2 ? "^-1 " : " ");
    Word w = parse_word(text, h.source().generator_names);
    Word back = parse_word(format_word(w, h.source().generator_names), h.source().generator_names);
    EXPECT_EQ(h.apply(w), h.apply(back));
  }
}
