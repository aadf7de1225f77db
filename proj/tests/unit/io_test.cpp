#include <gtest/gtest.h>

#include "quillen/errors.hpp"
#include "quillen/io.hpp"
#include "quillen/words.hpp"

using namespace quillen;

TEST(Json, GroupsRoundTrip) {
  for (const auto& name : {"S3", "Z/5", "A5", "Z/2xZ/2"}) {
    GroupPtr g = builtin_group(name);
    GroupPtr back = group_from_json(group_to_json(*g));
    EXPECT_EQ(*back, *g) << name;
    for (Element e = 0; e < g->order(); ++e) EXPECT_EQ(back->element_name(e), g->element_name(e));
  }
  Json perms = Json::parse(R"({"generators": ["s", "r"], "permutations": [[1, 0, 2], [1, 2, 0]]})");
  EXPECT_EQ(group_from_json(perms)->order(), 6u);
  EXPECT_THROW(group_from_json(Json::parse(R"({"table": [[0, 1], [1, 1]]})")), InvalidInput);
  EXPECT_THROW(group_from_json(Json(42)), InvalidInput);
}

TEST(Json, PresentationsAndHoms) {
  Json j = Json::parse(R"({"generators": ["x", "y"], "relators": ["x^2", "y^3", "(x y)^5"]})");
  FinitePresentation p = presentation_from_json(j);
  EXPECT_EQ(presentation_from_json(presentation_to_json(p)).relators, p.relators);

  GroupHom a5 = builtin_presentation("A5");
  GroupHom back = hom_from_json(a5.source(), hom_to_json(a5));
  EXPECT_EQ(back.images(), a5.images());
  EXPECT_THROW(presentation_from_json(Json::parse(R"({"generators": ["x"], "relators": ["y"]})")), InvalidInput);
}

TEST(Json, MatricesAndComplexes) {
  GroupPtr z5 = builtin_group("Z/5");
  GroupRingMatrix m = matrix_from_json(Json::parse(R"([["t + t^4 - 1", 0], [1, "2*t^3"]])"), z5);
  EXPECT_EQ(matrix_from_json(matrix_to_json(m), z5), m);
  EXPECT_THROW(matrix_from_json(Json::parse(R"([["t"], ["t", "1"]])"), z5), InvalidInput);

  Json pc = Json::parse(R"({"presentation": {"generators": ["x"], "relators": ["x^3"]},
                            "hom": {"target": "Z/3", "images": ["t"]}})");
  BasedChainComplex c = complex_from_json(pc);
  EXPECT_EQ(c.rank(2), 1u);
  BasedChainComplex again = complex_from_json(complex_to_json(c));
  EXPECT_EQ(again.boundary(2), c.boundary(2));
  EXPECT_EQ(again.label(1, 0), c.label(1, 0));
}

TEST(Json, ModelsRoundTrip) {
  auto model = product_model(builtin_presentation("Z/5"));
  Json j = model_to_json(model);
  auto back = model_from_json(j);
  EXPECT_EQ(back.w.boundary(2), model.w.boundary(2));
  EXPECT_EQ(model_to_json(back).dump(), j.dump());
}

TEST(Json, Config) {
  Config c = config_from_json(Json::parse(R"({"bar_column_budget": 12, "float_precision": 6})"));
  EXPECT_EQ(c.bar_column_budget, 12u);
  EXPECT_EQ(c.float_precision, 6);
  EXPECT_EQ(config_from_json(config_to_json(c)).bar_column_budget, 12u);
  EXPECT_THROW(config_from_json(Json::parse(R"({"no_such_budget": 1})")), InvalidInput);
}

TEST(Json, DecimalFormatting) {
  EXPECT_EQ(format_decimal(0.3819660112501051L, 6), "0.381966");
  EXPECT_EQ(format_decimal(-1.5L, 2), "-1.50");
  EXPECT_EQ(integer_from_json(integer_to_json(Integer("123456789012345678901234567890"))),
            Integer("123456789012345678901234567890"));
}
