// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/ric.hpp"

namespace rtune {

IntervalCongruence reduce(const Interval& i, const Congruence& c) { return IntervalCongruence(i, c); }

IntervalCongruence::IntervalCongruence(const Interval& i, const Congruence& c) : itv_(i), cong_(c) {
  if (itv_.is_bottom() || cong_.is_bottom()) {
    itv_ = Interval::bottom();
    cong_ = Congruence::bottom();
    return;
  }
  if (cong_.modulus() == 0) {
    if (!itv_.contains(cong_.residue())) {
      itv_ = Interval::bottom();
      cong_ = Congruence::bottom();
    } else {
      itv_ = Interval::constant(cong_.residue());
    }
    return;
  }
  itv_ = Interval(cong_.next_member(itv_.lo()), cong_.prev_member(itv_.hi()));
  if (itv_.is_bottom()) {
    cong_ = Congruence::bottom();
  } else if (auto v = itv_.singleton()) {
    cong_ = Congruence::constant(*v);
  }
}

IntervalCongruence IntervalCongruence::join(const IntervalCongruence& o) const {
  return {itv_.join(o.itv_), cong_.join(o.cong_)};
}

IntervalCongruence IntervalCongruence::meet(const IntervalCongruence& o) const {
  return {itv_.meet(o.itv_), cong_.meet(o.cong_)};
}

IntervalCongruence IntervalCongruence::widen(const IntervalCongruence& o, Thresholds thresholds) const {
  if (is_bottom()) return o;
  if (o.is_bottom()) return *this;
  return {itv_.widen(o.itv_, thresholds), cong_.widen(o.cong_)};
}

IntervalCongruence IntervalCongruence::narrow(const IntervalCongruence& o) const {
  return {itv_.narrow(o.itv_), cong_.narrow(o.cong_)};
}

IntervalCongruence IntervalCongruence::operator-() const { return {-itv_, -cong_}; }

IntervalCongruence IntervalCongruence::add(const IntervalCongruence& o) const {
  return {itv_.add(o.itv_), cong_.add(o.cong_)};
}

IntervalCongruence IntervalCongruence::scale(Int c) const { return {itv_.scale(c), cong_.scale(c)}; }

IntervalCongruence IntervalCongruence::mul(const IntervalCongruence& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  if (auto c = o.itv_.singleton()) return scale(*c);
  if (auto c = itv_.singleton()) return o.scale(*c);
  return {itv_.mul(o.itv_), Congruence::top()};
}

IntervalCongruence IntervalCongruence::div(const IntervalCongruence& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  return of(itv_.div(o.itv_));
}

IntervalCongruence IntervalCongruence::rem(const IntervalCongruence& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  return of(itv_.rem(o.itv_));
}

IntervalCongruence IntervalCongruence::exclude(Int v) const {
  if (!contains(v)) return *this;
  if (auto s = itv_.singleton(); s && *s == v) return bottom();
  // Step over v to the neighbouring member when v is an endpoint.
  const Bound lo = itv_.lo() == Bound(v) ? cong_.next_member(Bound(v + 1)) : itv_.lo();
  const Bound hi = itv_.hi() == Bound(v) ? cong_.prev_member(Bound(v - 1)) : itv_.hi();
  return {Interval(lo, hi), cong_};
}

std::string IntervalCongruence::to_string() const {
  if (is_bottom()) return "_|_";
  return itv_.to_string() + " /\\ " + cong_.to_string();
}

}  // namespace rtune
