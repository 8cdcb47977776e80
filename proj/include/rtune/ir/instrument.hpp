// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>

#include "rtune/ir/program.hpp"

namespace rtune {

/// Inserts one assertion per risky operation of the selected kinds:
///   div-zero      before `/` and `%`:        divisor != 0
///   int-overflow  after `+ - * /`:           min <= dst <= max for the signed width
///   buf-overflow  before loads and stores:   0 <= idx && idx < len(a)
///   use-after-free before deref(h):          status(h) == 1
/// Overflow checks follow the operation so the condition stays linear (the
/// destination holds the exact mathematical result). New ids continue from
/// the largest existing one, in program order.
Program instrument(const Program& p, const std::set<AssertionKind>& kinds, int bit_width = 32);

/// Number of operations `instrument` would guard for the given kinds.
std::size_t count_risky_operations(const Program& p, const std::set<AssertionKind>& kinds);

}  // namespace rtune
