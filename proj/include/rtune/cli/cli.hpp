// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

namespace rtune {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Entry point of the `rtune` tool: tune, analyze, compare, oracle, replay.
/// Reports go to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses a wall-clock limit such as 1s, 250ms, 2m or a plain number of seconds.
double parse_duration(const std::string& text);

}  // namespace rtune
