// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "rtune/optimizer/optimizer.hpp"

namespace rtune {

struct TraceSummary {
  int iterations_to_best = 0;
  std::size_t total_candidates = 0;
  double total_resource = 0;
  bool operator==(const TraceSummary&) const = default;
};

/// Everything a command produced; serialized as one JSON document.
struct RunReport {
  std::string command;
  std::string program;
  std::uint64_t seed = 0;
  ResourceBudget budget;
  std::map<std::string, Recipe> recipes;
  std::map<std::string, RecipeOutcome> outcomes;
  std::optional<TraceSummary> search;
  /// Command specific results (comparison table, replay classification...).
  nlohmann::json details = nlohmann::json::object();

  bool operator==(const RunReport&) const = default;
};

nlohmann::json to_json(const Recipe& r);
Recipe recipe_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RecipeOutcome& o);
RecipeOutcome outcome_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CostValue& c);
CostValue cost_from_json(const nlohmann::json& j);

}  // namespace rtune
