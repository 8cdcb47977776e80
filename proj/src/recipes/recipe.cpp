// SPDX-License-Identifier: Apache-2.0
#include "rtune/recipes/recipe.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace rtune {

std::vector<DomainId> Recipe::domains() const {
  std::vector<DomainId> out;
  for (const Ingredient& i : ingredients) out.push_back(i.domain);
  return out;
}

Recipe default_recipe() { return Recipe{{Ingredient{DomainId::BoolZones, Settings{}}}}; }

Recipe initial_recipe() { return Recipe{{Ingredient{DomainId::Intervals, Settings{}}}}; }

std::string CostValue::to_string() const {
  if (!is_finite()) return "inf";
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << value_;
  return out.str();
}

CostValue cost(std::size_t w, std::size_t w_total, double r, double r_max) {
  if (w_total == 0) throw std::invalid_argument("cost needs at least one assertion");
  if (w > w_total) throw std::invalid_argument("more warnings than assertions");
  if (r < 0 || !(r_max > 0)) throw std::invalid_argument("resource must be nonnegative and the limit positive");
  if (r > r_max) return CostValue::infinite();
  return CostValue((static_cast<double>(w) + r / r_max) / static_cast<double>(w_total));
}

Program inject_assumptions(const Program& p, const std::set<int>& verified) {
  const auto ids = p.assertion_ids();
  const std::set<int> known(ids.begin(), ids.end());
  for (int id : verified) {
    if (!known.count(id)) throw std::invalid_argument("unknown assertion id #" + std::to_string(id));
  }
  Program out = p;
  for (Function& f : out.functions) {
    for (Block& b : f.blocks) {
      for (Stmt& s : b.stmts) {
        if (const auto* a = std::get_if<stmt::Assert>(&s); a && verified.count(a->id)) s = stmt::Assume{a->cond};
      }
    }
  }
  return out;
}

std::set<int> RecipeOutcome::verified() const {
  std::set<int> out;
  for (const auto& [id, v] : verdicts) {
    if (v == Verdict::Safe) out.insert(id);
  }
  return out;
}

RecipeOutcome evaluate(const Program& p, const Recipe& rec, const ResourceBudget& budget) {
  if (rec.ingredients.empty()) throw std::invalid_argument("empty recipe");
  for (const Ingredient& i : rec.ingredients) {
    if (!has_implementation(i.domain)) throw UnimplementedDomain(i.domain);
  }
  const auto ids = p.assertion_ids();
  if (ids.empty()) throw std::invalid_argument("program has no assertions");

  RecipeOutcome out;
  out.w_total = ids.size();
  for (int id : ids) out.verdicts[id] = Verdict::Warning;
  std::set<int> verified;
  ResourceMeter meter(budget);
  for (const Ingredient& ing : rec.ingredients) {
    IngredientOutcome step;
    std::set<int> targets;
    for (int id : ids) {
      if (!verified.count(id)) targets.insert(id);
    }
    const double before = meter.consumed();
    if (!targets.empty() && !out.exhausted) {
      try {
        const Program current = inject_assumptions(p, verified);
        const AnalysisResult r = analyze_program(current, ing, targets, meter);
        for (const auto& [id, v] : r.verdicts) {
          if (v == Verdict::Safe) step.newly_verified.insert(id);
        }
      } catch (const BudgetExceeded&) {
        step.exhausted = true;
        out.exhausted = true;
      }
    }
    step.resource = meter.consumed() - before;
    verified.insert(step.newly_verified.begin(), step.newly_verified.end());
    out.per_ingredient.push_back(std::move(step));
  }
  for (int id : verified) out.verdicts[id] = Verdict::Safe;
  out.w = out.w_total - verified.size();
  out.r = 0;
  for (const auto& s : out.per_ingredient) out.r += s.resource;
  if (out.exhausted) {
    out.cost = CostValue::infinite();
    // The meter stops right after crossing the limit.
    if (!(out.r > budget.limit)) out.r = std::nextafter(budget.limit, std::numeric_limits<double>::infinity());
  } else {
    out.cost = cost(out.w, out.w_total, out.r, budget.limit);
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

int parse_choice(const std::string& key, const std::string& v, const std::vector<int>& allowed, int line) {
  for (int a : allowed) {
    if (v == std::to_string(a)) return a;
  }
  throw RecipeError("recipe line " + std::to_string(line) + ": invalid value '" + v + "' for " + key);
}

bool parse_switch(const std::string& key, const std::string& v, int line) {
  if (v == "on") return true;
  if (v == "off") return false;
  throw RecipeError("recipe line " + std::to_string(line) + ": " + key + " must be on or off");
}

}  // namespace

Recipe parse_recipe(std::string_view text) {
  Recipe r;
  std::vector<bool> has_domain;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string l = trim(raw);
    if (l.empty()) continue;
    if (l == "[ingredient]") {
      r.ingredients.emplace_back();
      has_domain.push_back(false);
      seen.clear();
      continue;
    }
    if (l.front() == '[') throw RecipeError("recipe line " + std::to_string(line) + ": unknown section " + l);
    if (r.ingredients.empty()) throw RecipeError("recipe line " + std::to_string(line) + ": key outside a section");
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw RecipeError("recipe line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(std::string_view(l).substr(0, eq));
    const std::string value = trim(std::string_view(l).substr(eq + 1));
    if (!seen.insert(key).second) throw RecipeError("recipe line " + std::to_string(line) + ": duplicate key " + key);
    Ingredient& ing = r.ingredients.back();
    if (key == "domain") {
      const auto d = parse_domain(value);
      if (!d) throw RecipeError("recipe line " + std::to_string(line) + ": unknown domain '" + value + "'");
      ing.domain = *d;
      has_domain.back() = true;
    } else if (key == "delay_widen") {
      ing.settings.delay_widen = parse_choice(key, value, Settings::delay_widen_values(), line);
    } else if (key == "narrow_iters") {
      ing.settings.narrow_iters = parse_choice(key, value, Settings::narrow_iters_values(), line);
    } else if (key == "widen_thresholds") {
      ing.settings.widen_thresholds = parse_choice(key, value, Settings::widen_thresholds_values(), line);
    } else if (key == "backward") {
      ing.settings.backward = parse_switch(key, value, line);
    } else if (key == "smashing") {
      ing.settings.smashing = parse_switch(key, value, line);
    } else {
      throw RecipeError("recipe line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (r.ingredients.empty()) throw RecipeError("recipe has no ingredients");
  for (std::size_t i = 0; i < has_domain.size(); ++i) {
    if (!has_domain[i]) throw RecipeError("ingredient " + std::to_string(i + 1) + " has no domain");
  }
  return r;
}

Recipe load_recipe(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RecipeError("cannot read recipe file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_recipe(ss.str());
}

std::string print_recipe(const Recipe& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.ingredients.size(); ++i) {
    const Ingredient& ing = r.ingredients[i];
    if (i > 0) out << "\n";
    out << "[ingredient]\n"
        << "domain = " << to_string(ing.domain) << "\n"
        << "delay_widen = " << ing.settings.delay_widen << "\n"
        << "narrow_iters = " << ing.settings.narrow_iters << "\n"
        << "widen_thresholds = " << ing.settings.widen_thresholds << "\n"
        << "backward = " << (ing.settings.backward ? "on" : "off") << "\n"
        << "smashing = " << (ing.settings.smashing ? "on" : "off") << "\n";
  }
  return out.str();
}

std::string summarize(const Recipe& r) {
  std::string s = "[";
  for (std::size_t i = 0; i < r.ingredients.size(); ++i) {
    const auto& [d, st] = r.ingredients[i];
    if (i > 0) s += ", ";
    s += std::string(to_string(d)) + "(" + std::to_string(st.delay_widen) + "," + std::to_string(st.narrow_iters) +
         "," + std::to_string(st.widen_thresholds) + "," + (st.backward ? "on" : "off") + "," +
         (st.smashing ? "on" : "off") + ")";
  }
  return s + "]";
}

}  // namespace rtune
