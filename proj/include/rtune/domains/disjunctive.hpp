// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rtune/domains/interval.hpp"

namespace rtune {

/// A finite union of at most kMaxDisjuncts intervals, kept sorted with gaps of
/// at least one missing integer between neighbours. When a result would need
/// more disjuncts, the two neighbours separated by the smallest gap are merged
/// (leftmost pair on ties).
class DisjunctiveInterval {
 public:
  static constexpr std::size_t kMaxDisjuncts = 4;

  explicit DisjunctiveInterval(const Interval& i);
  static DisjunctiveInterval top() { return DisjunctiveInterval(Interval::top()); }
  static DisjunctiveInterval bottom() { return DisjunctiveInterval(Interval::bottom()); }
  static DisjunctiveInterval constant(Int v) { return DisjunctiveInterval(Interval::constant(v)); }
  static DisjunctiveInterval of(const Interval& i) { return DisjunctiveInterval(i); }
  static DisjunctiveInterval from_parts(std::vector<Interval> parts);

  bool is_bottom() const { return parts_.empty(); }
  bool is_top() const { return parts_.size() == 1 && parts_[0].is_top(); }
  const std::vector<Interval>& parts() const { return parts_; }
  Interval hull() const;
  bool contains(Int v) const;

  bool leq(const DisjunctiveInterval& o) const;
  bool operator==(const DisjunctiveInterval& o) const = default;

  DisjunctiveInterval join(const DisjunctiveInterval& o) const;
  DisjunctiveInterval meet(const DisjunctiveInterval& o) const;
  /// Stable disjunct structure: only the outermost bounds are widened.
  /// Otherwise the value collapses to the widened hull.
  DisjunctiveInterval widen(const DisjunctiveInterval& o, Thresholds thresholds) const;
  DisjunctiveInterval narrow(const DisjunctiveInterval& o) const;

  DisjunctiveInterval operator-() const;
  DisjunctiveInterval add(const DisjunctiveInterval& o) const;
  DisjunctiveInterval scale(Int c) const;
  DisjunctiveInterval mul(const DisjunctiveInterval& o) const;
  DisjunctiveInterval div(const DisjunctiveInterval& o) const;
  DisjunctiveInterval rem(const DisjunctiveInterval& o) const;
  DisjunctiveInterval exclude(Int v) const;

  std::string to_string() const;

 private:
  DisjunctiveInterval() = default;
  template <class Op>
  DisjunctiveInterval pairwise(const DisjunctiveInterval& o, Op op) const;

  std::vector<Interval> parts_;
};

}  // namespace rtune
