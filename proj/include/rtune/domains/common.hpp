// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtune/domains/bound.hpp"

namespace rtune {

/// Number of integer and boolean variables a state ranges over.
struct VarLayout {
  std::size_t ints = 0;
  std::size_t bools = 0;
  bool operator==(const VarLayout&) const = default;
};

class LayoutMismatch : public std::invalid_argument {
 public:
  LayoutMismatch() : std::invalid_argument("abstract states over different variable sets") {}
};

inline void check_layout(const VarLayout& a, const VarLayout& b) {
  if (!(a == b)) throw LayoutMismatch();
}

/// Abstract boolean: a subset of {true, false} as a bit mask.
enum class Tri : std::uint8_t { Bottom = 0, True = 1, False = 2, Top = 3 };

inline Tri tri_join(Tri a, Tri b) { return static_cast<Tri>(static_cast<int>(a) | static_cast<int>(b)); }
inline Tri tri_meet(Tri a, Tri b) { return static_cast<Tri>(static_cast<int>(a) & static_cast<int>(b)); }
inline bool tri_leq(Tri a, Tri b) { return tri_meet(a, b) == a; }
inline Tri tri_of(bool v) { return v ? Tri::True : Tri::False; }
inline bool tri_contains(Tri t, bool v) { return tri_leq(tri_of(v), t); }
Tri tri_not(Tri a);
Tri tri_and(Tri a, Tri b);
Tri tri_or(Tri a, Tri b);
const char* to_string(Tri t);

/// A linear constraint e <= 0, e == 0 or e != 0.
enum class ConstraintKind { Le, Eq, Ne };

/// One concrete store: values of the integer and boolean variables.
struct Point {
  std::vector<Int> ints;
  std::vector<char> bools;
};

}  // namespace rtune
