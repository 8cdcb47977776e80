// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rtune/domains/poset.hpp"
#include "rtune/optimizer/rng.hpp"
#include "rtune/recipes/recipe.hpp"

namespace rtune {

class OptimizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Strategy { Rs, Dars, Sa, Hc };
const char* to_string(Strategy s);
std::optional<Strategy> parse_strategy(const std::string& s);

/// The domains and setting values the generators may draw from.
struct SearchSpace {
  std::vector<DomainId> domains;
  std::vector<int> delay_widen;
  std::vector<int> narrow_iters;
  std::vector<int> widen_thresholds;
  std::vector<bool> backward;
  std::vector<bool> smashing;

  /// Every implemented domain of the poset and every allowed setting value.
  static SearchSpace full(const DomainPoset& poset);
  /// Only the given domains, with default settings.
  static SearchSpace defaults_only(std::vector<DomainId> domains);
  /// Number of distinct ingredients.
  std::size_t ingredient_count() const;
  std::vector<Ingredient> ingredients() const;
};

/// Retry cap for rejection sampling and poset-compatibility repair.
inline constexpr int kRetryCap = 64;
/// Maximum number of recipes enumerate_exhaustive evaluates.
inline constexpr std::size_t kEnumerationCap = 5000;
/// Temperature of the simulated annealing acceptance.
inline constexpr double kSaTemperature = 1.0;
/// hc replaces its current recipe by a fresh one on every 11th generation,
/// i.e. after each run of 10 generated recipes.
inline constexpr int kHcRestartPeriod = 11;

Recipe generate_rs(int l, const SearchSpace& space, Rng& rng);
/// Recipes of length l with pairwise incomparable domains. Throws when l
/// exceeds the largest antichain of the space or sampling keeps failing.
Recipe generate_dars(int l, const DomainPoset& poset, const SearchSpace& space, Rng& rng);

/// Uniform draw among the minimal elements of the implemented domains of the
/// space that are incomparable to every domain of rec. Throws when none.
DomainId rand_poset_least_inc(const Recipe& rec, const DomainPoset& poset, const SearchSpace& space, Rng& rng);

enum class MutationAction { Add, ModGt, ModLt, ModInc };
const char* to_string(MutationAction a);
/// The action draw of the mutation: ADD with probability 0.2, else MOD with
/// GT/LT/INC at 0.5/0.3/0.2. For MOD the ingredient index is drawn between
/// the two draws when `index_of` is non-null.
MutationAction draw_action(Rng& rng, std::size_t recipe_size = 0, std::size_t* index_of = nullptr);

/// One mutation step of the sa and hc generators; the result has at most
/// `max_len` ingredients and pairwise incomparable domains.
Recipe generate_mutate(const Recipe& rec, int max_len, const DomainPoset& poset, const SearchSpace& space, Rng& rng,
                       MutationAction* applied = nullptr);

/// Changes exactly one setting of one ingredient to a different value of
/// the space (returns rec unchanged when no setting has an alternative).
Recipe mutate_settings(const Recipe& rec, const SearchSpace& space, Rng& rng);

bool accept_rs(const CostValue& cur, const CostValue& next);
bool accept_hc(const CostValue& cur, const CostValue& next);
/// Improvements always; otherwise with probability exp(-delta (1 + i) / T0),
/// drawing once from rng; infinite costs never.
bool accept_sa(const CostValue& cur, const CostValue& next, int i, Rng& rng);

struct TunerConfig {
  ResourceBudget budget;
  int l_max = 3;
  int i_dom = 5;
  int i_set = 10;
  Strategy strategy = Strategy::Dars;
  std::uint64_t seed = 0;
  Recipe rec_init = initial_recipe();
  DomainPoset poset = DomainPoset::default_poset();
  /// Defaults to the full space of the poset when empty.
  std::optional<SearchSpace> space;
};

enum class Phase { Domains, Settings };
const char* to_string(Phase p);

struct TraceEntry {
  int iteration = 0;
  Phase phase = Phase::Domains;
  Recipe candidate;
  CostValue cost;
  bool accepted = false;
  CostValue best;
  bool operator==(const TraceEntry&) const = default;
};

struct TuneResult {
  Recipe best;
  CostValue best_cost;
  RecipeOutcome best_outcome;
  Recipe initial;
  CostValue initial_cost;
  std::vector<TraceEntry> trace;
  /// Iteration of the last strict improvement (0: the initial recipe).
  int iterations_to_best = 0;
  double total_resource = 0;
};

/// Two-phase search: domains (lengths 1..l_max, i_dom * l candidates each)
/// then settings (i_set mutations of the best recipe).
TuneResult optimize(const Program& p, const TunerConfig& cfg);

struct EnumerationResult {
  Recipe best;
  CostValue cost;
  std::size_t evaluated = 0;
};

/// Number of poset-compatible recipes of length 1..max_len over the space.
std::size_t count_recipes(const SearchSpace& space, const DomainPoset& poset, int max_len);
/// Evaluates every compatible recipe (length first, then lexicographic in
/// the space's ingredient order) and returns the first of minimal cost.
EnumerationResult enumerate_exhaustive(const Program& p, const SearchSpace& space, const DomainPoset& poset,
                                       int max_len, const ResourceBudget& budget,
                                       std::size_t cap = kEnumerationCap);

/// One ingredient per maximal implemented domain, in canonical order, each
/// with the most precise settings.
Recipe most_precise_recipe(const DomainPoset& poset);

/// Size of the largest set of pairwise incomparable domains among `ds`.
std::size_t max_antichain(const DomainPoset& poset, const std::vector<DomainId>& ds);

}  // namespace rtune
