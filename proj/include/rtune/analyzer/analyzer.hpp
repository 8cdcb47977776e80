// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtune/domains/state.hpp"
#include "rtune/ir/program.hpp"

namespace rtune {

/// Analysis knobs and their allowed values.
struct Settings {
  int delay_widen = 1;       // 1, 2, 4, 8, 16
  int narrow_iters = 2;      // 1, 2, 3, 4
  int widen_thresholds = 0;  // 0, 10, 20, 30, 40
  bool backward = false;
  bool smashing = true;

  static const std::vector<int>& delay_widen_values();
  static const std::vector<int>& narrow_iters_values();
  static const std::vector<int>& widen_thresholds_values();
  /// Every value in the allowed sets.
  bool valid() const;
  /// Settings with the most precise value of every knob.
  static Settings most_precise() { return Settings{16, 4, 40, true, true}; }

  bool operator==(const Settings&) const = default;
  auto operator<=>(const Settings&) const = default;
};

struct Ingredient {
  DomainId domain = DomainId::Intervals;
  Settings settings;

  bool operator==(const Ingredient&) const = default;
  auto operator<=>(const Ingredient&) const = default;
};

enum class BudgetMode { Wall, Steps };

/// r_max: seconds in wall mode, abstract steps in steps mode.
struct ResourceBudget {
  BudgetMode mode = BudgetMode::Steps;
  double limit = 1e6;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded() : std::runtime_error("resource budget exceeded") {}
};

/// Counts abstract steps and enforces a budget. In wall mode the clock is
/// read every 64 steps.
class ResourceMeter {
 public:
  explicit ResourceMeter(ResourceBudget b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  void tick() {
    ++steps_;
    if (budget_.mode == BudgetMode::Steps) {
      if (static_cast<double>(steps_) > budget_.limit) throw BudgetExceeded();
    } else if (steps_ % 64 == 0 && seconds() > budget_.limit) {
      throw BudgetExceeded();
    }
  }
  std::uint64_t steps() const { return steps_; }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  /// Resource used so far in the unit of the budget.
  double consumed() const { return budget_.mode == BudgetMode::Steps ? static_cast<double>(steps_) : seconds(); }
  const ResourceBudget& budget() const { return budget_; }

 private:
  ResourceBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t steps_ = 0;
};

enum class Verdict { Safe, Warning };
const char* to_string(Verdict v);

/// A program point: statement index `point` of a block (point == size is the
/// end of the block, before its terminator).
using ProgramPoint = std::pair<std::uint32_t, std::uint32_t>;

struct AnalysisResult {
  std::map<int, Verdict> verdicts;
  /// Filled only when requested; states before each statement.
  std::map<ProgramPoint, AbstractState> invariants;
  std::uint64_t steps = 0;
  double wall_time = 0;
};

struct AnalyzeOptions {
  bool keep_invariants = false;
};

/// The n distinct constants of comparisons and finite havoc bounds with the
/// smallest magnitude (smaller value first on ties), sorted ascending.
std::vector<Int> collect_thresholds(const Program& p, int n);

/// Analyzes one function for the assertions in `targets`. Throws BudgetExceeded
/// when the meter runs out and UnimplementedDomain for declared-only domains.
AnalysisResult analyze(const Function& f, const Ingredient& ing, const std::set<int>& targets, Thresholds thresholds,
                       ResourceMeter& meter, const AnalyzeOptions& opt = {});

/// Every function of `p` against one meter, with thresholds collected from
/// `p`. Invariants are not kept.
AnalysisResult analyze_program(const Program& p, const Ingredient& ing, const std::set<int>& targets,
                               ResourceMeter& meter);
AnalysisResult analyze_program(const Program& p, const Ingredient& ing, const std::set<int>& targets,
                               const ResourceBudget& budget);

/// Assertion ids that appear in f.
std::set<int> assertion_ids(const Function& f);

}  // namespace rtune
