// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/bound.hpp"

namespace rtune {

Bound Bound::from_wide(__int128 v, Round r) {
  if (v > kMaxFinite) {
    return r == Round::Up ? plus_infinity() : Bound(kMaxFinite);
  }
  if (v < -kMaxFinite) {
    return r == Round::Down ? minus_infinity() : Bound(-kMaxFinite);
  }
  return Bound(static_cast<Int>(v));
}

Bound Bound::operator-() const {
  switch (kind_) {
    case Kind::PlusInf:
      return minus_infinity();
    case Kind::MinusInf:
      return plus_infinity();
    default:
      return Bound(-value_);
  }
}

Bound Bound::add(const Bound& a, const Bound& b, Round r) {
  if (a.is_finite() && b.is_finite()) {
    return from_wide(static_cast<__int128>(a.value_) + b.value_, r);
  }
  if (a.is_finite()) return b;
  if (b.is_finite()) return a;
  if (a.kind_ == b.kind_) return a;
  throw std::logic_error("Bound: -oo + +oo is undefined");
}

Bound Bound::mul(const Bound& a, const Bound& b, Round r) {
  if (a.is_finite() && b.is_finite()) {
    return from_wide(static_cast<__int128>(a.value_) * b.value_, r);
  }
  auto sign = [](const Bound& x) -> int {
    if (x.is_plus_infinity()) return 1;
    if (x.is_minus_infinity()) return -1;
    return x.value_ > 0 ? 1 : (x.value_ < 0 ? -1 : 0);
  };
  const int s = sign(a) * sign(b);
  if (s == 0) return Bound(0);
  return s > 0 ? plus_infinity() : minus_infinity();
}

std::string Bound::to_string() const {
  switch (kind_) {
    case Kind::PlusInf:
      return "+oo";
    case Kind::MinusInf:
      return "-oo";
    default:
      return std::to_string(value_);
  }
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

}  // namespace rtune
