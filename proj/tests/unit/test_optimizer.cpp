// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "rtune/ir/parser.hpp"
#include "rtune/optimizer/optimizer.hpp"

using namespace rtune;

namespace {

const char* kProgram = R"(
fn main {
  block entry { x = havoc(0, 1); i = 0; br (x == 0) then: a else: b; }
  block a { y = 0; goto head; }
  block b { y = 10; goto head; }
  block head { br (i < 10) then: body else: exit; }
  block body { i = i + 1; goto head; }
  block exit {
    assert overflow: y <= 10 #1;
    assert div: y != 5 #2;
    assert overflow: i == 10 #3;
    return;
  }
}
)";

const DomainPoset& poset() {
  static const DomainPoset p = DomainPoset::default_poset();
  return p;
}

std::set<DomainId> as_set(const std::vector<DomainId>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Optimizer, CandidateCounts) {
  const Program p = parse_program(kProgram);
  TunerConfig cfg;
  cfg.budget = {BudgetMode::Steps, 1e6};
  cfg.seed = 3;
  for (Strategy s : {Strategy::Rs, Strategy::Dars, Strategy::Sa, Strategy::Hc}) {
    cfg.strategy = s;
    cfg.i_dom = 5;
    cfg.i_set = 10;
    const auto r = optimize(p, cfg);
    EXPECT_EQ(r.trace.size(), 40u) << to_string(s);
    EXPECT_LE(r.best_cost, r.initial_cost);
    CostValue prev = r.initial_cost;
    for (const auto& e : r.trace) {
      EXPECT_LE(e.best, prev);
      prev = e.best;
    }
  }
  cfg.i_dom = 10;
  cfg.i_set = 20;
  EXPECT_EQ(optimize(p, cfg).trace.size(), 80u);
  cfg.l_max = 1;
  cfg.i_dom = 1;
  cfg.i_set = 0;
  EXPECT_EQ(optimize(p, cfg).trace.size(), 1u);
}

TEST(Optimizer, Deterministic) {
  const Program p = parse_program(kProgram);
  TunerConfig cfg;
  cfg.budget = {BudgetMode::Steps, 1e6};
  cfg.strategy = Strategy::Sa;
  cfg.seed = 99;
  const auto a = optimize(p, cfg);
  const auto b = optimize(p, cfg);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.best, b.best);
}

TEST(Optimizer, SettingsPhaseKeepsDomains) {
  const Program p = parse_program(kProgram);
  TunerConfig cfg;
  cfg.budget = {BudgetMode::Steps, 1e6};
  cfg.strategy = Strategy::Hc;
  cfg.seed = 5;
  cfg.i_dom = 10;
  cfg.i_set = 20;
  const auto r = optimize(p, cfg);
  std::optional<std::vector<DomainId>> phase2;
  for (const auto& e : r.trace) {
    if (e.phase != Phase::Settings) continue;
    if (!phase2) phase2 = e.candidate.domains();
    EXPECT_EQ(e.candidate.domains(), *phase2);
  }
  int g = 0;
  for (const auto& e : r.trace) {
    if (e.phase == Phase::Domains && ++g % kHcRestartPeriod == 0) EXPECT_TRUE(e.accepted);
  }
}

TEST(Dars, NeverComparable) {
  Rng rng(1);
  const auto space = SearchSpace::full(poset());
  bool bool_zones = false;
  for (int i = 0; i < 2000; ++i) {
    const Recipe r = generate_dars(1 + i % 4, poset(), space, rng);
    ASSERT_TRUE(poset().compatible(r.domains()));
    if (r.domains() == std::vector<DomainId>{DomainId::Bool, DomainId::Zones}) bool_zones = true;
  }
  EXPECT_TRUE(bool_zones);
  EXPECT_EQ(max_antichain(poset(), poset().implemented()), 4u);
  EXPECT_THROW(generate_dars(5, poset(), space, rng), OptimizerError);
}

TEST(Mutation, LeastIncomparable) {
  const auto space = SearchSpace::full(poset());
  std::set<DomainId> seen;
  Rng rng(2);
  const Recipe zones{{Ingredient{DomainId::Zones, {}}}};
  for (int i = 0; i < 300; ++i) seen.insert(rand_poset_least_inc(zones, poset(), space, rng));
  EXPECT_EQ(seen, (std::set<DomainId>{DomainId::Bool, DomainId::Ric, DomainId::DisInt}));
  const Recipe b{{Ingredient{DomainId::Bool, {}}}};
  EXPECT_EQ(rand_poset_least_inc(b, poset(), space, rng), DomainId::Intervals);
  const Recipe bi{{Ingredient{DomainId::Bool, {}}, Ingredient{DomainId::Intervals, {}}}};
  EXPECT_THROW(rand_poset_least_inc(bi, poset(), space, rng), OptimizerError);
}

TEST(Mutation, GreaterGoesToImmediateSuccessors) {
  const auto space = SearchSpace::full(poset());
  Rng rng(4);
  const Recipe itv{{Ingredient{DomainId::Intervals, Settings{8, 3, 10, true, false}}}};
  std::set<DomainId> gt;
  for (int i = 0; i < 500; ++i) {
    MutationAction act;
    const Recipe m = generate_mutate(itv, 1, poset(), space, rng, &act);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.ingredients[0].settings, itv.ingredients[0].settings);
    if (act == MutationAction::ModGt) gt.insert(m.ingredients[0].domain);
  }
  EXPECT_EQ(gt, (std::set<DomainId>{DomainId::Ric, DomainId::DisInt, DomainId::Zones}));
  const Recipe zb{{Ingredient{DomainId::Zones, {}}, Ingredient{DomainId::Bool, {}}}};
  for (int i = 0; i < 200; ++i) {
    const Recipe m = generate_mutate(zb, 3, poset(), space, rng);
    EXPECT_TRUE(poset().compatible(m.domains()));
    for (DomainId d : m.domains()) EXPECT_NE(d, DomainId::BoolZones);
  }
}

TEST(Mutation, SettingsChangeExactlyOneField) {
  const auto space = SearchSpace::full(poset());
  Rng rng(6);
  const Recipe r{{Ingredient{DomainId::Zones, {}}}};
  std::set<int> delays;
  for (int i = 0; i < 500; ++i) {
    const Recipe m = mutate_settings(r, space, rng);
    const Settings& a = r.ingredients[0].settings;
    const Settings& b = m.ingredients[0].settings;
    const int diff = (a.delay_widen != b.delay_widen) + (a.narrow_iters != b.narrow_iters) +
                     (a.widen_thresholds != b.widen_thresholds) + (a.backward != b.backward) +
                     (a.smashing != b.smashing);
    ASSERT_EQ(diff, 1);
    EXPECT_EQ(m.domains(), r.domains());
    if (a.delay_widen != b.delay_widen) delays.insert(b.delay_widen);
  }
  EXPECT_EQ(delays, (std::set<int>{2, 4, 8, 16}));
}

TEST(Accept, Rules) {
  Rng rng(8);
  EXPECT_FALSE(accept_rs(CostValue(0.5), CostValue(0.1)));
  EXPECT_TRUE(accept_hc(CostValue(0.5), CostValue(0.45)));
  EXPECT_FALSE(accept_hc(CostValue(0.5), CostValue(0.5)));
  EXPECT_TRUE(accept_sa(CostValue(0.5), CostValue(0.45), 3, rng));
  EXPECT_FALSE(accept_sa(CostValue(0.5), CostValue::infinite(), 0, rng));
  int hits = 0;
  for (int i = 0; i < 10000; ++i) hits += accept_sa(CostValue(0.5), CostValue(0.6), 0, rng);
  EXPECT_NEAR(hits / 10000.0, std::exp(-0.1), 0.02);
}

TEST(Enumerate, CountsAndOptimum) {
  const Program p = parse_program(kProgram);
  const ResourceBudget budget{BudgetMode::Steps, 1e6};
  const auto ib = SearchSpace::defaults_only({DomainId::Intervals, DomainId::Bool});
  EXPECT_EQ(count_recipes(ib, poset(), 2), 4u);
  EXPECT_EQ(count_recipes(SearchSpace::defaults_only({DomainId::Intervals, DomainId::Zones}), poset(), 2), 2u);
  const auto space = SearchSpace::defaults_only({DomainId::Intervals, DomainId::DisInt, DomainId::Zones,
                                                 DomainId::Bool});
  const auto best = enumerate_exhaustive(p, space, poset(), 2, budget);
  TunerConfig cfg;
  cfg.budget = budget;
  cfg.space = space;
  cfg.l_max = 2;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    cfg.seed = seed;
    EXPECT_GE(optimize(p, cfg).best_cost, best.cost);
  }
  EXPECT_THROW(enumerate_exhaustive(p, SearchSpace::full(poset()), poset(), 2, budget), OptimizerError);
}

TEST(MostPrecise, MaximalDomains) {
  const Recipe r = most_precise_recipe(poset());
  EXPECT_EQ(r.domains(),
            (std::vector<DomainId>{DomainId::Ric, DomainId::DisInt, DomainId::Octagons, DomainId::BoolZones}));
  for (const auto& i : r.ingredients) EXPECT_EQ(i.settings, (Settings{16, 4, 40, true, true}));
  EXPECT_EQ(most_precise_recipe(DomainPoset::parse("domain zones\n")).size(), 1u);
}

TEST(Calibration, ActionFrequencies) {
  Rng rng(10);
  std::map<MutationAction, int> n;
  std::size_t idx;
  for (int i = 0; i < 100000; ++i) ++n[draw_action(rng, 3, &idx)];
  const double mod = 100000 - n[MutationAction::Add];
  EXPECT_NEAR(n[MutationAction::Add] / 100000.0, 0.2, 0.01);
  EXPECT_NEAR(n[MutationAction::ModGt] / mod, 0.5, 0.01);
  EXPECT_NEAR(n[MutationAction::ModLt] / mod, 0.3, 0.01);
  EXPECT_NEAR(n[MutationAction::ModInc] / mod, 0.2, 0.01);
}
