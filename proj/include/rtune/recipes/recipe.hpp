// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rtune/analyzer/analyzer.hpp"

namespace rtune {

/// An ordered sequence of ingredients; assertions proved by one ingredient
/// become assumptions for the next.
struct Recipe {
  std::vector<Ingredient> ingredients;

  std::vector<DomainId> domains() const;
  std::size_t size() const { return ingredients.size(); }
  bool operator==(const Recipe&) const = default;
  auto operator<=>(const Recipe&) const = default;
};

/// Baseline: prod(bool,zones) with default settings.
Recipe default_recipe();
/// Initial recipe of the tuner: intervals with default settings.
Recipe initial_recipe();

/// A nonnegative cost or infinity. Finite values are doubles; comparisons
/// are exact on the stored value.
class CostValue {
 public:
  CostValue() = default;
  explicit CostValue(double v) : value_(v) {}
  static CostValue infinite() { return CostValue(std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return value_ != std::numeric_limits<double>::infinity(); }
  double value() const { return value_; }
  std::string to_string() const;

  bool operator==(const CostValue&) const = default;
  auto operator<=>(const CostValue& o) const { return value_ <=> o.value_; }

 private:
  double value_ = 0;
};

/// (w + r / r_max) / w_total when r <= r_max, else infinity.
CostValue cost(std::size_t w, std::size_t w_total, double r, double r_max);

/// Turns the assertions with the given ids into assumptions in place.
Program inject_assumptions(const Program& p, const std::set<int>& verified);

struct IngredientOutcome {
  std::set<int> newly_verified;
  double resource = 0;
  bool exhausted = false;
  bool operator==(const IngredientOutcome&) const = default;
};

struct RecipeOutcome {
  std::map<int, Verdict> verdicts;
  std::size_t w = 0;
  std::size_t w_total = 0;
  double r = 0;
  CostValue cost;
  std::vector<IngredientOutcome> per_ingredient;
  bool exhausted = false;

  std::set<int> verified() const;
  bool operator==(const RecipeOutcome&) const = default;
};

/// Runs the ingredients in order against one budget for the whole recipe.
/// Throws UnimplementedDomain before analyzing anything when an ingredient
/// names a declared-only domain, and std::invalid_argument for programs
/// without assertions.
RecipeOutcome evaluate(const Program& p, const Recipe& rec, const ResourceBudget& budget);

class RecipeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recipe file: `[ingredient]` sections in order, each with `domain = <id>`
/// and optionally delay_widen, narrow_iters, widen_thresholds, backward and
/// smashing (on/off). `#` starts a comment. Unknown keys and values outside
/// the allowed sets are rejected. Declared-only domains are accepted here.
Recipe parse_recipe(std::string_view text);
Recipe load_recipe(const std::string& path);
std::string print_recipe(const Recipe& r);
/// Compact one-line form, e.g. [zones(1,2,0,off,on), bool(...)].
std::string summarize(const Recipe& r);

}  // namespace rtune
