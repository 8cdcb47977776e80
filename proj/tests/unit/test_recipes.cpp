// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "rtune/ir/parser.hpp"
#include "rtune/recipes/recipe.hpp"

using namespace rtune;

namespace {

const char* kFour = R"(
fn main {
  block entry { x = havoc(0, 1); br (x == 0) then: a else: b; }
  block a { y = 0; goto join; }
  block b { y = 10; goto join; }
  block join {
    assert overflow: y <= 10 #1;
    assert div: y != 5 #2;
    assert overflow: x <= 1 #3;
    assert div: x != 0 #4;
    return;
  }
}
)";

const char* kRelational = R"(
fn main {
  block e {
    w = havoc(0, 10);
    z = w + 1;
    x = z - w;
    assert overflow: x >= 1 #1;
    assert div: x != 0 #2;
    y = 10 / x;
    return;
  }
}
)";

}  // namespace

TEST(Cost, Formula) {
  EXPECT_NEAR(cost(28, 45, 0.35, 1.0).value(), 0.63, 1e-12);
  EXPECT_FALSE(cost(5, 10, 6, 5).is_finite());
  EXPECT_NEAR(cost(5, 10, 1, 10).value(), 0.51, 1e-12);
  EXPECT_LT(cost(5, 10, 1, 10), cost(5, 10, 2, 10));
  EXPECT_LT(cost(4, 10, 9, 10), cost(5, 10, 0, 10));
  EXPECT_TRUE(cost(10, 10, 10, 10).is_finite());
  EXPECT_THROW(cost(0, 0, 1, 1), std::invalid_argument);
}

TEST(Inject, AssertionsBecomeAssumptions) {
  const Program p = parse_program(kFour);
  EXPECT_EQ(inject_assumptions(p, {}), p);
  const Program q = inject_assumptions(p, {3});
  EXPECT_EQ(q.count_assertions(), 3u);
  EXPECT_TRUE(std::holds_alternative<stmt::Assume>(q.functions[0].blocks[3].stmts[2]));
  EXPECT_THROW(inject_assumptions(p, {9}), std::invalid_argument);
}

TEST(Inject, VerifiedFactsHelpLaterAssertions) {
  const Program p = parse_program(kRelational);
  const Ingredient itv{DomainId::Intervals, {}};
  const ResourceBudget budget{BudgetMode::Steps, 1e6};
  EXPECT_EQ(analyze_program(p, itv, {2}, budget).verdicts.at(2), Verdict::Warning);
  EXPECT_EQ(analyze_program(p, Ingredient{DomainId::Zones, {}}, {1}, budget).verdicts.at(1), Verdict::Safe);
  EXPECT_EQ(analyze_program(inject_assumptions(p, {1}), itv, {2}, budget).verdicts.at(2), Verdict::Safe);
}

TEST(Evaluate, SingleIngredientCost) {
  const Program p = parse_program(kFour);
  const ResourceBudget budget{BudgetMode::Steps, 1000};
  const RecipeOutcome o = evaluate(p, Recipe{{Ingredient{DomainId::Intervals, {}}}}, budget);
  EXPECT_EQ(o.w, 2u);
  EXPECT_EQ(o.w_total, 4u);
  EXPECT_EQ(o.verified(), (std::set<int>{1, 3}));
  ASSERT_EQ(o.per_ingredient.size(), 1u);
  EXPECT_EQ(o.r, o.per_ingredient[0].resource);
  EXPECT_GT(o.r, 0);
  EXPECT_DOUBLE_EQ(o.cost.value(), (2 + o.r / 1000) / 4);
  EXPECT_EQ(evaluate(p, Recipe{{Ingredient{DomainId::Intervals, {}}}}, budget), o);
}

TEST(Evaluate, ChainingAccumulates) {
  const Program p = parse_program(kRelational);
  const ResourceBudget budget{BudgetMode::Steps, 1e6};
  const auto alone = evaluate(p, Recipe{{Ingredient{DomainId::Bool, {}}}}, budget);
  const auto chain =
      evaluate(p, Recipe{{Ingredient{DomainId::Bool, {}}, Ingredient{DomainId::Zones, {}}}}, budget);
  for (int id : alone.verified()) EXPECT_TRUE(chain.verified().count(id));
  EXPECT_EQ(chain.w, 0u);
  EXPECT_EQ(chain.r, chain.per_ingredient[0].resource + chain.per_ingredient[1].resource);
  const auto tiny = evaluate(p, Recipe{{Ingredient{DomainId::Zones, {}}}}, ResourceBudget{BudgetMode::Steps, 1});
  EXPECT_FALSE(tiny.cost.is_finite());
  EXPECT_EQ(tiny.w, tiny.w_total);
  EXPECT_THROW(evaluate(p, Recipe{{Ingredient{DomainId::Polyhedra, {}}}}, budget), UnimplementedDomain);
}

TEST(RecipeFile, RoundTripAndErrors) {
  const Recipe r{{Ingredient{DomainId::BoolZones, Settings{4, 3, 20, true, false}},
                  Ingredient{DomainId::DisInt, Settings{}}}};
  EXPECT_EQ(parse_recipe(print_recipe(r)), r);
  EXPECT_EQ(parse_recipe("[ingredient]\ndomain = prod(bool, zones)\n"), default_recipe());
  EXPECT_THROW(parse_recipe("[ingredient]\ndomain = zones\ncolour = red\n"), RecipeError);
  EXPECT_THROW(parse_recipe("[ingredient]\ndomain = zones\ndelay_widen = 3\n"), RecipeError);
  EXPECT_THROW(parse_recipe("[ingredient]\ndelay_widen = 2\n"), RecipeError);
  EXPECT_THROW(parse_recipe(""), RecipeError);
  EXPECT_EQ(parse_recipe("[ingredient]\ndomain = polyhedra\n").ingredients[0].domain, DomainId::Polyhedra);
}
