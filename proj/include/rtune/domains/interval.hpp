// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>

#include "rtune/domains/bound.hpp"

namespace rtune {

/// Thresholds used by widening, sorted ascending and duplicate free.
using Thresholds = std::span<const Int>;

/// A closed integer interval [lo, hi] with possibly infinite endpoints.
/// Every empty interval is represented by the canonical bottom [+oo, -oo].
class Interval {
 public:
  Interval(Bound lo, Bound hi);

  static Interval top() { return Interval(kMinusInf, kPlusInf); }
  static Interval bottom() { return Interval(); }
  static Interval constant(Int v) { return Interval(v, v); }
  static Interval of(const Interval& i) { return i; }

  bool is_bottom() const { return lo_ > hi_; }
  bool is_top() const { return lo_.is_minus_infinity() && hi_.is_plus_infinity(); }
  const Bound& lo() const { return lo_; }
  const Bound& hi() const { return hi_; }
  std::optional<Int> singleton() const;
  bool contains(Int v) const { return !is_bottom() && lo_ <= Bound(v) && Bound(v) <= hi_; }
  const Interval& hull() const { return *this; }

  bool leq(const Interval& o) const;
  bool operator==(const Interval& o) const = default;

  Interval join(const Interval& o) const;
  Interval meet(const Interval& o) const;
  /// Unstable bounds jump to the nearest enclosing threshold, else to infinity.
  Interval widen(const Interval& o, Thresholds thresholds) const;
  /// Refines only infinite bounds of `*this` with those of `o`.
  Interval narrow(const Interval& o) const;

  Interval operator-() const;
  Interval add(const Interval& o) const;
  Interval sub(const Interval& o) const { return add(-o); }
  Interval scale(Int c) const;
  Interval mul(const Interval& o) const;
  /// Truncating division over the non-zero part of the divisor.
  Interval div(const Interval& o) const;
  /// Remainder with the sign of the dividend, over the non-zero divisors.
  Interval rem(const Interval& o) const;
  /// The values x with c * x in *this (rounded inward), for c != 0.
  Interval unscale(Int c) const;
  /// Removes `v` when it is an endpoint; otherwise returns *this.
  Interval exclude(Int v) const;

  std::string to_string() const;

 private:
  Interval() : lo_(kPlusInf), hi_(kMinusInf) {}

  Bound lo_;
  Bound hi_;
};

/// Largest threshold <= v, if any.
std::optional<Int> threshold_below(Thresholds t, const Bound& v);
/// Smallest threshold >= v, if any.
std::optional<Int> threshold_above(Thresholds t, const Bound& v);

}  // namespace rtune
