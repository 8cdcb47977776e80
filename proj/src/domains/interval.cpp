// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/interval.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace rtune {

Interval::Interval(Bound lo, Bound hi) : lo_(lo), hi_(hi) {
  if (lo_ > hi_ || lo_.is_plus_infinity() || hi_.is_minus_infinity()) {
    lo_ = kPlusInf;
    hi_ = kMinusInf;
  }
}

std::optional<Int> Interval::singleton() const {
  if (!is_bottom() && lo_.is_finite() && lo_ == hi_) return lo_.value();
  return std::nullopt;
}

bool Interval::leq(const Interval& o) const {
  if (is_bottom()) return true;
  if (o.is_bottom()) return false;
  return o.lo_ <= lo_ && hi_ <= o.hi_;
}

Interval Interval::join(const Interval& o) const {
  if (is_bottom()) return o;
  if (o.is_bottom()) return *this;
  return Interval(std::min(lo_, o.lo_), std::max(hi_, o.hi_));
}

Interval Interval::meet(const Interval& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  return Interval(std::max(lo_, o.lo_), std::min(hi_, o.hi_));
}

std::optional<Int> threshold_below(Thresholds t, const Bound& v) {
  std::optional<Int> best;
  for (Int x : t) {
    if (Bound(x) <= v) best = x;
  }
  return best;
}

std::optional<Int> threshold_above(Thresholds t, const Bound& v) {
  for (Int x : t) {
    if (v <= Bound(x)) return x;
  }
  return std::nullopt;
}

Interval Interval::widen(const Interval& o, Thresholds thresholds) const {
  if (is_bottom()) return o;
  if (o.is_bottom()) return *this;
  Bound lo = lo_;
  Bound hi = hi_;
  if (o.lo_ < lo_) {
    auto t = threshold_below(thresholds, o.lo_);
    lo = t ? Bound(*t) : kMinusInf;
  }
  if (o.hi_ > hi_) {
    auto t = threshold_above(thresholds, o.hi_);
    hi = t ? Bound(*t) : kPlusInf;
  }
  return Interval(lo, hi);
}

Interval Interval::narrow(const Interval& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  return Interval(lo_.is_minus_infinity() ? o.lo_ : lo_, hi_.is_plus_infinity() ? o.hi_ : hi_);
}

Interval Interval::operator-() const {
  if (is_bottom()) return bottom();
  return Interval(-hi_, -lo_);
}

Interval Interval::add(const Interval& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  return Interval(Bound::add(lo_, o.lo_, Round::Down), Bound::add(hi_, o.hi_, Round::Up));
}

Interval Interval::scale(Int c) const { return mul(constant(c)); }

Interval Interval::mul(const Interval& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  const std::array<std::pair<Bound, Bound>, 4> corners{
      std::pair{lo_, o.lo_}, std::pair{lo_, o.hi_}, std::pair{hi_, o.lo_}, std::pair{hi_, o.hi_}};
  Bound lo = kPlusInf;
  Bound hi = kMinusInf;
  for (const auto& [a, b] : corners) {
    lo = std::min(lo, Bound::mul(a, b, Round::Down));
    hi = std::max(hi, Bound::mul(a, b, Round::Up));
  }
  return Interval(lo, hi);
}

namespace {

// Truncating quotient of two bounds, divisor non-zero. oo/oo is mapped to 0;
// the other corners of a box always cover the true extremes in that case.
Bound trunc_div(const Bound& a, const Bound& b) {
  if (a.is_finite() && b.is_finite()) return Bound(a.value() / b.value());
  if (a.is_finite() || !b.is_finite()) return Bound(0);
  const bool neg = a.is_minus_infinity() != (b.value() < 0);
  return neg ? kMinusInf : kPlusInf;
}

Interval div_same_sign(const Interval& y, const Interval& z) {
  const std::array<std::pair<Bound, Bound>, 4> corners{std::pair{y.lo(), z.lo()}, std::pair{y.lo(), z.hi()},
                                                       std::pair{y.hi(), z.lo()}, std::pair{y.hi(), z.hi()}};
  Bound lo = kPlusInf;
  Bound hi = kMinusInf;
  for (const auto& [a, b] : corners) {
    const Bound q = trunc_div(a, b);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return Interval(lo, hi);
}

Bound abs_bound(const Bound& b) { return b < Bound(0) ? -b : b; }

}  // namespace

Interval Interval::div(const Interval& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  const Interval neg = o.meet(Interval(kMinusInf, Bound(-1)));
  const Interval pos = o.meet(Interval(Bound(1), kPlusInf));
  Interval r = bottom();
  if (!neg.is_bottom()) r = r.join(div_same_sign(*this, neg));
  if (!pos.is_bottom()) r = r.join(div_same_sign(*this, pos));
  return r;
}

Interval Interval::rem(const Interval& o) const {
  if (is_bottom() || o.is_bottom()) return bottom();
  const Interval nz = o.meet(Interval(kMinusInf, Bound(-1))).join(o.meet(Interval(Bound(1), kPlusInf)));
  if (nz.is_bottom()) return bottom();
  if (auto y = singleton()) {
    if (auto z = nz.singleton()) return constant(*y % *z);
  }
  // |r| < |z| and |r| <= |y|, sign of y.
  const Bound zmax = std::max(abs_bound(nz.lo()), abs_bound(nz.hi()));
  const Bound zbound = zmax.is_finite() ? Bound(zmax.value() - 1) : kPlusInf;
  Bound zmin_abs = kPlusInf;
  if (!nz.contains(0) && nz.lo() > Bound(0)) zmin_abs = nz.lo();
  else if (!nz.contains(0) && nz.hi() < Bound(0)) zmin_abs = -nz.hi();
  else zmin_abs = Bound(1);
  const Bound ybound = std::max(abs_bound(lo_), abs_bound(hi_));
  const Bound m = std::min(zbound, ybound);
  if (lo_ >= Bound(0)) {
    if (hi_ < zmin_abs) return *this;
    return Interval(Bound(0), std::min(m, hi_));
  }
  if (hi_ <= Bound(0)) {
    if (-lo_ < zmin_abs) return *this;
    return Interval(std::max(-m, lo_), Bound(0));
  }
  return Interval(std::max(-m, lo_), std::min(m, hi_));
}

Interval Interval::unscale(Int c) const {
  if (is_bottom()) return bottom();
  auto cdiv = [c](const Bound& b, bool ceil_mode) -> Bound {
    if (!b.is_finite()) return c > 0 ? b : -b;
    return Bound(ceil_mode ? ceil_div(b.value(), c) : floor_div(b.value(), c));
  };
  if (c > 0) return Interval(cdiv(lo_, true), cdiv(hi_, false));
  return Interval(cdiv(hi_, true), cdiv(lo_, false));
}

Interval Interval::exclude(Int v) const {
  if (is_bottom()) return *this;
  if (lo_ == Bound(v)) return Interval(Bound(v + 1), hi_);
  if (hi_ == Bound(v)) return Interval(lo_, Bound(v - 1));
  return *this;
}

std::string Interval::to_string() const {
  if (is_bottom()) return "_|_";
  return "[" + lo_.to_string() + ", " + hi_.to_string() + "]";
}

}  // namespace rtune
