// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>

#include "rtune/ir/program.hpp"

namespace rtune {

enum class ConcreteVerdict { HoldsOnAllRuns, Violated };

struct ConcreteVerdictSet {
  std::map<int, ConcreteVerdict> verdicts;
  std::size_t run_count = 0;
};

/// Raised when exhaustive execution cannot complete: too many runs, a run
/// exceeding the step cap, a value leaving 64-bit range, or a function with
/// parameters (whose inputs are unknown).
class ConcreteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Executes every function from its entry on the full cross product of havoc
/// values. A run ends at `return`, when an assume fails, or when a division by
/// zero, an out-of-bounds access or a deref of an unallocated handle halts it.
/// A failing assert marks the assertion violated and execution continues.
/// Array cells and handle statuses start at 0.
ConcreteVerdictSet concrete_run_all(const Program& p, std::size_t max_states, std::size_t step_cap = 100000);

}  // namespace rtune
