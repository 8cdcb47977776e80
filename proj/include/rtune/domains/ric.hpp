// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "rtune/domains/congruence.hpp"
#include "rtune/domains/interval.hpp"

namespace rtune {

/// Reduced product of an interval and a congruence class. Every operation
/// returns a reduced value: finite endpoints are members of the class and an
/// empty combination is the canonical bottom.
class IntervalCongruence {
 public:
  IntervalCongruence(const Interval& i, const Congruence& c);

  static IntervalCongruence top() { return {Interval::top(), Congruence::top()}; }
  static IntervalCongruence bottom() { return {Interval::bottom(), Congruence::bottom()}; }
  static IntervalCongruence constant(Int v) { return {Interval::constant(v), Congruence::constant(v)}; }
  static IntervalCongruence of(const Interval& i) { return {i, Congruence::top()}; }

  const Interval& interval() const { return itv_; }
  const Congruence& congruence() const { return cong_; }
  bool is_bottom() const { return itv_.is_bottom(); }
  bool is_top() const { return itv_.is_top() && cong_.is_top(); }
  const Interval& hull() const { return itv_; }
  bool contains(Int v) const { return itv_.contains(v) && cong_.contains(v); }

  bool leq(const IntervalCongruence& o) const { return itv_.leq(o.itv_) && cong_.leq(o.cong_); }
  bool operator==(const IntervalCongruence& o) const = default;

  IntervalCongruence join(const IntervalCongruence& o) const;
  IntervalCongruence meet(const IntervalCongruence& o) const;
  IntervalCongruence widen(const IntervalCongruence& o, Thresholds thresholds) const;
  IntervalCongruence narrow(const IntervalCongruence& o) const;

  IntervalCongruence operator-() const;
  IntervalCongruence add(const IntervalCongruence& o) const;
  IntervalCongruence scale(Int c) const;
  IntervalCongruence mul(const IntervalCongruence& o) const;
  IntervalCongruence div(const IntervalCongruence& o) const;
  IntervalCongruence rem(const IntervalCongruence& o) const;
  IntervalCongruence exclude(Int v) const;

  std::string to_string() const;

 private:
  Interval itv_;
  Congruence cong_;
};

/// Snaps finite interval endpoints inward to members of the class.
IntervalCongruence reduce(const Interval& i, const Congruence& c);

}  // namespace rtune
