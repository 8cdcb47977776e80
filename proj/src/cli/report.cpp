// SPDX-License-Identifier: Apache-2.0
#include "rtune/cli/report.hpp"

namespace rtune {

using nlohmann::json;

json to_json(const CostValue& c) { return c.is_finite() ? json(c.value()) : json("inf"); }

CostValue cost_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw std::invalid_argument("bad cost value");
    return CostValue::infinite();
  }
  return CostValue(j.get<double>());
}

json to_json(const Recipe& r) {
  json out = json::array();
  for (const Ingredient& i : r.ingredients) {
    out.push_back({{"domain", to_string(i.domain)},
                   {"delay_widen", i.settings.delay_widen},
                   {"narrow_iters", i.settings.narrow_iters},
                   {"widen_thresholds", i.settings.widen_thresholds},
                   {"backward", i.settings.backward},
                   {"smashing", i.settings.smashing}});
  }
  return out;
}

Recipe recipe_from_json(const json& j) {
  Recipe r;
  for (const json& i : j) {
    const auto d = parse_domain(i.at("domain").get<std::string>());
    if (!d) throw std::invalid_argument("unknown domain in report");
    r.ingredients.push_back(Ingredient{*d, Settings{i.at("delay_widen").get<int>(), i.at("narrow_iters").get<int>(),
                                                     i.at("widen_thresholds").get<int>(), i.at("backward").get<bool>(),
                                                     i.at("smashing").get<bool>()}});
  }
  return r;
}

json to_json(const RecipeOutcome& o) {
  json verdicts = json::object();
  for (const auto& [id, v] : o.verdicts) verdicts[std::to_string(id)] = to_string(v);
  json per = json::array();
  for (const auto& s : o.per_ingredient) {
    per.push_back({{"newly_verified", s.newly_verified}, {"resource", s.resource}, {"exhausted", s.exhausted}});
  }
  return {{"verdicts", verdicts}, {"w", o.w},         {"w_total", o.w_total},       {"r", o.r},
          {"cost", to_json(o.cost)}, {"exhausted", o.exhausted}, {"per_ingredient", per}};
}

RecipeOutcome outcome_from_json(const json& j) {
  RecipeOutcome o;
  for (const auto& [id, v] : j.at("verdicts").items()) {
    o.verdicts[std::stoi(id)] = v.get<std::string>() == "safe" ? Verdict::Safe : Verdict::Warning;
  }
  o.w = j.at("w").get<std::size_t>();
  o.w_total = j.at("w_total").get<std::size_t>();
  o.r = j.at("r").get<double>();
  o.cost = cost_from_json(j.at("cost"));
  o.exhausted = j.at("exhausted").get<bool>();
  for (const json& s : j.at("per_ingredient")) {
    o.per_ingredient.push_back(IngredientOutcome{s.at("newly_verified").get<std::set<int>>(),
                                                 s.at("resource").get<double>(), s.at("exhausted").get<bool>()});
  }
  return o;
}

json to_json(const RunReport& r) {
  json recipes = json::object();
  for (const auto& [k, v] : r.recipes) recipes[k] = to_json(v);
  json outcomes = json::object();
  for (const auto& [k, v] : r.outcomes) outcomes[k] = to_json(v);
  json out = {{"command", r.command},
              {"program", r.program},
              {"seed", r.seed},
              {"mode", r.budget.mode == BudgetMode::Steps ? "steps" : "wall"},
              {"limit", r.budget.limit},
              {"recipes", recipes},
              {"outcomes", outcomes},
              {"details", r.details}};
  if (r.search) {
    out["search"] = {{"iterations_to_best", r.search->iterations_to_best},
                     {"total_candidates", r.search->total_candidates},
                     {"total_resource", r.search->total_resource}};
  }
  return out;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.program = j.at("program").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.budget.mode = j.at("mode").get<std::string>() == "steps" ? BudgetMode::Steps : BudgetMode::Wall;
  r.budget.limit = j.at("limit").get<double>();
  for (const auto& [k, v] : j.at("recipes").items()) r.recipes[k] = recipe_from_json(v);
  for (const auto& [k, v] : j.at("outcomes").items()) r.outcomes[k] = outcome_from_json(v);
  r.details = j.at("details");
  if (j.contains("search")) {
    const json& s = j.at("search");
    r.search = TraceSummary{s.at("iterations_to_best").get<int>(), s.at("total_candidates").get<std::size_t>(),
                            s.at("total_resource").get<double>()};
  }
  return r;
}

}  // namespace rtune
