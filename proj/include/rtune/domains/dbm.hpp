// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>

#include "rtune/domains/interval.hpp"

namespace rtune::dbm {

/// Matrix entries are upper bounds; kInf means unconstrained. Finite entries
/// stay within [-kLimit, kLimit]: larger sums relax to kInf and smaller ones
/// relax to -kLimit, which keeps every entry a sound upper bound.
inline constexpr Int kInf = std::numeric_limits<Int>::max();
inline constexpr Int kLimit = Int{1} << 61;

inline Int clamp(Int v) {
  if (v > kLimit) return kInf;
  return v < -kLimit ? -kLimit : v;
}

inline Int add(Int a, Int b) {
  if (a == kInf || b == kInf) return kInf;
  return clamp(a + b);
}

/// An upper bound taken from a Bound; +oo maps to kInf.
inline Int from_upper(const Bound& b) {
  if (b.is_plus_infinity()) return kInf;
  if (b.is_minus_infinity()) return -kLimit;
  return b.value() > kLimit ? kInf : clamp(b.value());
}

inline Bound to_upper(Int v) { return v == kInf ? kPlusInf : Bound(v); }
inline Bound to_lower_negated(Int v) { return v == kInf ? kMinusInf : Bound(-v); }

/// Widening of one entry standing for `sign * scale * x <= v`: an unstable
/// entry moves to the tightest threshold candidate sign * scale * t >= new, or
/// to kInf.
inline Int widen_entry(Int old, Int nw, Thresholds t, int sign, Int scale) {
  if (nw <= old) return old;
  Int best = kInf;
  for (Int x : t) {
    const __int128 w = static_cast<__int128>(sign) * scale * x;
    const Int cand = w > kLimit ? kInf : (w < -kLimit ? -kLimit : static_cast<Int>(w));
    if (cand >= nw && cand < best) best = cand;
  }
  return best;
}

inline Int floor_half(Int v) { return v == kInf ? kInf : floor_div(v, 2); }

}  // namespace rtune::dbm
