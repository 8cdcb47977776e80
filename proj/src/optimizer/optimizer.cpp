// SPDX-License-Identifier: Apache-2.0
#include "rtune/optimizer/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace rtune {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Rs:
      return "rs";
    case Strategy::Dars:
      return "dars";
    case Strategy::Sa:
      return "sa";
    case Strategy::Hc:
      return "hc";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(const std::string& s) {
  for (Strategy x : {Strategy::Rs, Strategy::Dars, Strategy::Sa, Strategy::Hc}) {
    if (s == to_string(x)) return x;
  }
  return std::nullopt;
}

const char* to_string(MutationAction a) {
  switch (a) {
    case MutationAction::Add:
      return "add";
    case MutationAction::ModGt:
      return "mod-gt";
    case MutationAction::ModLt:
      return "mod-lt";
    case MutationAction::ModInc:
      return "mod-inc";
  }
  return "?";
}

const char* to_string(Phase p) { return p == Phase::Domains ? "domains" : "settings"; }

SearchSpace SearchSpace::full(const DomainPoset& poset) {
  return SearchSpace{poset.implemented(),         Settings::delay_widen_values(), Settings::narrow_iters_values(),
                     Settings::widen_thresholds_values(), {false, true},                {false, true}};
}

SearchSpace SearchSpace::defaults_only(std::vector<DomainId> domains) {
  const Settings d;
  std::sort(domains.begin(), domains.end());
  return SearchSpace{std::move(domains), {d.delay_widen}, {d.narrow_iters}, {d.widen_thresholds},
                     {d.backward},       {d.smashing}};
}

std::size_t SearchSpace::ingredient_count() const {
  return domains.size() * delay_widen.size() * narrow_iters.size() * widen_thresholds.size() * backward.size() *
         smashing.size();
}

std::vector<Ingredient> SearchSpace::ingredients() const {
  std::vector<Ingredient> out;
  for (DomainId d : domains) {
    for (int dw : delay_widen) {
      for (int ni : narrow_iters) {
        for (int wt : widen_thresholds) {
          for (bool bw : backward) {
            for (bool sm : smashing) out.push_back(Ingredient{d, Settings{dw, ni, wt, bw, sm}});
          }
        }
      }
    }
  }
  return out;
}

namespace {

template <class T>
const T& draw(const std::vector<T>& v, Rng& rng) {
  if (v.empty()) throw OptimizerError("empty choice set in the search space");
  return v[rng.index(v.size())];
}

bool draw(const std::vector<bool>& v, Rng& rng) {
  if (v.empty()) throw OptimizerError("empty choice set in the search space");
  return v[rng.index(v.size())];
}

Settings draw_settings(const SearchSpace& space, Rng& rng) {
  Settings s;
  s.delay_widen = draw(space.delay_widen, rng);
  s.narrow_iters = draw(space.narrow_iters, rng);
  s.widen_thresholds = draw(space.widen_thresholds, rng);
  s.backward = draw(space.backward, rng);
  s.smashing = draw(space.smashing, rng);
  return s;
}

std::vector<DomainId> usable(const DomainPoset& poset, const SearchSpace& space) {
  std::vector<DomainId> out;
  for (DomainId d : space.domains) {
    if (poset.is_implemented(d)) out.push_back(d);
  }
  return out;
}

bool in(const std::vector<DomainId>& v, DomainId d) { return std::find(v.begin(), v.end(), d) != v.end(); }

}  // namespace

std::size_t max_antichain(const DomainPoset& poset, const std::vector<DomainId>& ds) {
  std::size_t best = 0;
  const std::size_t n = ds.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<DomainId> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) pick.push_back(ds[i]);
    }
    if (pick.size() > best && poset.compatible(pick)) best = pick.size();
  }
  return best;
}

Recipe generate_rs(int l, const SearchSpace& space, Rng& rng) {
  if (l < 1) throw OptimizerError("recipe length must be at least 1");
  Recipe r;
  for (int k = 0; k < l; ++k) {
    const DomainId d = draw(space.domains, rng);
    r.ingredients.push_back(Ingredient{d, draw_settings(space, rng)});
  }
  return r;
}

Recipe generate_dars(int l, const DomainPoset& poset, const SearchSpace& space, Rng& rng) {
  if (l < 1) throw OptimizerError("recipe length must be at least 1");
  const std::vector<DomainId> ds = usable(poset, space);
  if (static_cast<std::size_t>(l) > max_antichain(poset, ds)) {
    throw OptimizerError("no " + std::to_string(l) + " pairwise incomparable domains exist in the poset");
  }
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    Recipe r;
    std::vector<DomainId> chosen;
    bool stuck = false;
    for (int k = 0; k < l && !stuck; ++k) {
      int tries = 0;
      DomainId d;
      do {
        d = draw(ds, rng);
        chosen.push_back(d);
        const bool ok = poset.compatible(chosen);
        chosen.pop_back();
        if (ok) break;
      } while (++tries < kRetryCap);
      if (tries == kRetryCap) {
        stuck = true;
        break;
      }
      chosen.push_back(d);
      r.ingredients.push_back(Ingredient{d, draw_settings(space, rng)});
    }
    if (!stuck) return r;
  }
  throw OptimizerError("domain-aware sampling exceeded its retry cap");
}

DomainId rand_poset_least_inc(const Recipe& rec, const DomainPoset& poset, const SearchSpace& space, Rng& rng) {
  std::vector<DomainId> s;
  for (DomainId d : usable(poset, space)) {
    const auto ds = rec.domains();
    if (std::none_of(ds.begin(), ds.end(), [&](DomainId e) { return poset.comparable(d, e); })) s.push_back(d);
  }
  if (s.empty()) throw OptimizerError("no domain is incomparable to every ingredient");
  return draw(poset.minimal(s), rng);
}

MutationAction draw_action(Rng& rng, std::size_t recipe_size, std::size_t* index_of) {
  if (rng.uniform() < 0.2) return MutationAction::Add;
  if (index_of) *index_of = rng.index(recipe_size);
  const double u = rng.uniform();
  if (u < 0.5) return MutationAction::ModGt;
  if (u < 0.8) return MutationAction::ModLt;
  return MutationAction::ModInc;
}

Recipe generate_mutate(const Recipe& rec, int max_len, const DomainPoset& poset, const SearchSpace& space, Rng& rng,
                       MutationAction* applied) {
  if (rec.ingredients.empty()) throw OptimizerError("cannot mutate an empty recipe");
  const std::vector<DomainId> ds = usable(poset, space);
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    std::size_t idx = 0;
    const MutationAction act = draw_action(rng, rec.size(), &idx);
    Recipe out = rec;
    if (act == MutationAction::Add) {
      if (rec.size() >= static_cast<std::size_t>(max_len)) continue;
      try {
        out.ingredients.push_back(Ingredient{rand_poset_least_inc(rec, poset, space, rng), Settings{}});
      } catch (const OptimizerError&) {
        continue;
      }
    } else {
      const DomainId d = rec.ingredients[idx].domain;
      std::vector<DomainId> options;
      if (act == MutationAction::ModInc) {
        Recipe rest = rec;
        rest.ingredients.erase(rest.ingredients.begin() + static_cast<std::ptrdiff_t>(idx));
        try {
          options.push_back(rand_poset_least_inc(rest, poset, space, rng));
        } catch (const OptimizerError&) {
          continue;
        }
      } else {
        for (DomainId e : act == MutationAction::ModGt ? poset.successors(d) : poset.predecessors(d)) {
          if (in(ds, e)) options.push_back(e);
        }
        if (options.empty()) continue;
      }
      out.ingredients[idx].domain = act == MutationAction::ModInc ? options[0] : draw(options, rng);
    }
    if (poset.compatible(out.domains())) {
      if (applied) *applied = act;
      return out;
    }
  }
  throw OptimizerError("mutation exceeded its retry cap");
}

Recipe mutate_settings(const Recipe& rec, const SearchSpace& space, Rng& rng) {
  auto alternatives = [&](const Settings& s, int knob) {
    std::vector<int> out;
    auto add_ints = [&](const std::vector<int>& vs, int cur) {
      for (int v : vs) {
        if (v != cur) out.push_back(v);
      }
    };
    auto add_bools = [&](const std::vector<bool>& vs, bool cur) {
      for (bool v : vs) {
        if (v != cur && std::find(out.begin(), out.end(), int(v)) == out.end()) out.push_back(v);
      }
    };
    switch (knob) {
      case 0:
        add_ints(space.delay_widen, s.delay_widen);
        break;
      case 1:
        add_ints(space.narrow_iters, s.narrow_iters);
        break;
      case 2:
        add_ints(space.widen_thresholds, s.widen_thresholds);
        break;
      case 3:
        add_bools(space.backward, s.backward);
        break;
      default:
        add_bools(space.smashing, s.smashing);
        break;
    }
    return out;
  };
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    for (int k = 0; k < 5; ++k) {
      if (!alternatives(rec.ingredients[i].settings, k).empty()) {
        candidates.push_back(i);
        break;
      }
    }
  }
  if (candidates.empty()) return rec;
  Recipe out = rec;
  Settings& s = out.ingredients[draw(candidates, rng)].settings;
  std::vector<int> knobs;
  for (int k = 0; k < 5; ++k) {
    if (!alternatives(s, k).empty()) knobs.push_back(k);
  }
  const int knob = draw(knobs, rng);
  const int v = draw(alternatives(s, knob), rng);
  switch (knob) {
    case 0:
      s.delay_widen = v;
      break;
    case 1:
      s.narrow_iters = v;
      break;
    case 2:
      s.widen_thresholds = v;
      break;
    case 3:
      s.backward = v != 0;
      break;
    default:
      s.smashing = v != 0;
      break;
  }
  return out;
}

bool accept_rs(const CostValue&, const CostValue&) { return false; }

bool accept_hc(const CostValue& cur, const CostValue& next) { return next < cur; }

bool accept_sa(const CostValue& cur, const CostValue& next, int i, Rng& rng) {
  if (!next.is_finite()) return false;
  if (next < cur) return true;
  const double delta = next.value() - cur.value();
  return rng.uniform() < std::exp(-delta * (1.0 + i) / kSaTemperature);
}

TuneResult optimize(const Program& p, const TunerConfig& cfg) {
  if (cfg.l_max < 1 || cfg.i_dom < 1 || cfg.i_set < 0) throw OptimizerError("invalid tuner configuration");
  const SearchSpace space = cfg.space ? *cfg.space : SearchSpace::full(cfg.poset);
  Rng rng(cfg.seed);
  std::map<Recipe, RecipeOutcome> cache;
  TuneResult res;
  auto eval = [&](const Recipe& r) -> const RecipeOutcome& {
    if (cfg.budget.mode == BudgetMode::Steps) {
      auto it = cache.find(r);
      if (it == cache.end()) it = cache.emplace(r, evaluate(p, r, cfg.budget)).first;
      res.total_resource += it->second.r;
      return it->second;
    }
    auto& slot = cache[Recipe{}];
    slot = evaluate(p, r, cfg.budget);
    res.total_resource += slot.r;
    return slot;
  };

  res.initial = cfg.rec_init;
  res.best_outcome = eval(cfg.rec_init);
  res.initial_cost = res.best_outcome.cost;
  res.best = cfg.rec_init;
  res.best_cost = res.initial_cost;
  Recipe current = cfg.rec_init;
  CostValue current_cost = res.initial_cost;

  int iteration = 0;
  int g = 0;
  for (int l = 1; l <= cfg.l_max; ++l) {
    for (int i = 1; i <= cfg.i_dom * l; ++i) {
      ++g;
      ++iteration;
      Recipe next;
      bool restart = false;
      switch (cfg.strategy) {
        case Strategy::Rs:
          next = generate_rs(l, space, rng);
          break;
        case Strategy::Dars:
          next = generate_dars(l, cfg.poset, space, rng);
          break;
        case Strategy::Sa:
          next = generate_mutate(current, l, cfg.poset, space, rng);
          break;
        case Strategy::Hc:
          restart = g % kHcRestartPeriod == 0;
          next = restart ? generate_dars(l, cfg.poset, space, rng) : generate_mutate(current, l, cfg.poset, space, rng);
          break;
      }
      const RecipeOutcome& out = eval(next);
      const CostValue c = out.cost;
      if (c < res.best_cost) {
        res.best = next;
        res.best_cost = c;
        res.best_outcome = out;
        res.iterations_to_best = iteration;
      }
      bool accepted = false;
      switch (cfg.strategy) {
        case Strategy::Rs:
        case Strategy::Dars:
          accepted = accept_rs(current_cost, c);
          break;
        case Strategy::Sa:
          accepted = accept_sa(current_cost, c, g - 1, rng);
          break;
        case Strategy::Hc:
          accepted = restart || accept_hc(current_cost, c);
          break;
      }
      if (accepted) {
        current = next;
        current_cost = c;
      }
      res.trace.push_back(TraceEntry{iteration, Phase::Domains, next, c, accepted, res.best_cost});
    }
  }
  for (int j = 0; j < cfg.i_set; ++j) {
    ++iteration;
    const Recipe next = mutate_settings(res.best, space, rng);
    const RecipeOutcome& out = eval(next);
    const CostValue c = out.cost;
    const bool improved = c < res.best_cost;
    if (improved) {
      res.best = next;
      res.best_cost = c;
      res.best_outcome = out;
      res.iterations_to_best = iteration;
    }
    res.trace.push_back(TraceEntry{iteration, Phase::Settings, next, c, improved, res.best_cost});
  }
  return res;
}

namespace {

/// Visits compatible recipes in enumeration order; stops when fn returns false.
void for_each_recipe(const SearchSpace& space, const DomainPoset& poset, int max_len,
                     const std::function<bool(const Recipe&)>& fn) {
  const std::vector<Ingredient> all = space.ingredients();
  std::vector<Ingredient> usable_ings;
  for (const Ingredient& i : all) {
    if (poset.is_implemented(i.domain)) usable_ings.push_back(i);
  }
  bool go = true;
  Recipe cur;
  std::function<void(int)> extend = [&](int remaining) {
    if (remaining == 0) {
      go = fn(cur);
      return;
    }
    for (const Ingredient& i : usable_ings) {
      const auto ds = cur.domains();
      if (std::any_of(ds.begin(), ds.end(), [&](DomainId d) { return poset.comparable(d, i.domain); })) continue;
      cur.ingredients.push_back(i);
      extend(remaining - 1);
      cur.ingredients.pop_back();
      if (!go) return;
    }
  };
  for (int len = 1; len <= max_len && go; ++len) extend(len);
}

}  // namespace

std::size_t count_recipes(const SearchSpace& space, const DomainPoset& poset, int max_len) {
  std::size_t n = 0;
  for_each_recipe(space, poset, max_len, [&](const Recipe&) {
    ++n;
    return n <= kEnumerationCap * 100;
  });
  return n;
}

EnumerationResult enumerate_exhaustive(const Program& p, const SearchSpace& space, const DomainPoset& poset,
                                       int max_len, const ResourceBudget& budget, std::size_t cap) {
  std::size_t n = 0;
  for_each_recipe(space, poset, max_len, [&](const Recipe&) { return ++n <= cap; });
  if (n > cap) throw OptimizerError("search space exceeds the enumeration cap of " + std::to_string(cap));
  if (n == 0) throw OptimizerError("search space contains no compatible recipe");
  EnumerationResult best;
  best.cost = CostValue::infinite();
  bool first = true;
  for_each_recipe(space, poset, max_len, [&](const Recipe& r) {
    const CostValue c = evaluate(p, r, budget).cost;
    ++best.evaluated;
    if (first || c < best.cost) {
      best.best = r;
      best.cost = c;
      first = false;
    }
    return true;
  });
  return best;
}

Recipe most_precise_recipe(const DomainPoset& poset) {
  Recipe r;
  for (DomainId d : poset.maximal(poset.implemented())) {
    r.ingredients.push_back(Ingredient{d, Settings::most_precise()});
  }
  return r;
}

}  // namespace rtune
