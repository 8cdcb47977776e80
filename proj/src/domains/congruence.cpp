// SPDX-License-Identifier: Apache-2.0
#include "rtune/domains/congruence.hpp"

#include <cstdlib>
#include <numeric>

namespace rtune {

namespace {

using Wide = __int128;

Wide wide_mod(Wide v, Wide m) {
  Wide r = v % m;
  return r < 0 ? r + m : r;
}

bool fits(Wide v) { return v <= Bound::kMaxFinite && v >= -Bound::kMaxFinite; }

// Returns g = gcd(a, b) and x with a*x ≡ g (mod b).
Wide ext_gcd(Wide a, Wide b, Wide& x) {
  Wide old_r = a, r = b, old_s = 1, s = 0;
  while (r != 0) {
    const Wide q = old_r / r;
    Wide t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  x = old_s;
  return old_r;
}

}  // namespace

Congruence::Congruence(Int modulus, Int residue) : bottom_(false), modulus_(std::llabs(modulus)), residue_(residue) {
  if (modulus_ > 0) residue_ = static_cast<Int>(wide_mod(residue_, modulus_));
}

bool Congruence::contains(Int v) const {
  if (bottom_) return false;
  if (modulus_ == 0) return v == residue_;
  return wide_mod(static_cast<Wide>(v) - residue_, modulus_) == 0;
}

bool Congruence::leq(const Congruence& o) const {
  if (bottom_) return true;
  if (o.bottom_) return false;
  if (o.modulus_ == 0) return modulus_ == 0 && residue_ == o.residue_;
  return modulus_ % o.modulus_ == 0 && o.contains(residue_);
}

Congruence Congruence::join(const Congruence& o) const {
  if (bottom_) return o;
  if (o.bottom_) return *this;
  const Wide diff = static_cast<Wide>(residue_) - o.residue_;
  const Int d = static_cast<Int>(fits(diff) ? (diff < 0 ? -diff : diff) : 1);
  const Int g = std::gcd(std::gcd(modulus_, o.modulus_), d);
  if (g == 0) return *this;
  return Congruence(g, residue_);
}

Congruence Congruence::meet(const Congruence& o) const {
  if (bottom_ || o.bottom_) return bottom();
  if (modulus_ == 0) return o.contains(residue_) ? *this : bottom();
  if (o.modulus_ == 0) return contains(o.residue_) ? o : bottom();
  Wide inv = 0;
  const Wide g = ext_gcd(modulus_, o.modulus_, inv);
  const Wide diff = static_cast<Wide>(o.residue_) - residue_;
  if (diff % g != 0) return bottom();
  const Wide lcm = static_cast<Wide>(modulus_) / g * o.modulus_;
  if (!fits(lcm)) return modulus_ >= o.modulus_ ? *this : o;
  const Wide m2 = o.modulus_ / g;
  const Wide k = wide_mod(wide_mod(diff / g, m2) * wide_mod(inv, m2), m2);
  return Congruence(static_cast<Int>(lcm), static_cast<Int>(wide_mod(residue_ + modulus_ * k, lcm)));
}

Congruence Congruence::widen(const Congruence& o) const {
  if (bottom_) return o;
  return o.leq(*this) ? *this : top();
}

Congruence Congruence::narrow(const Congruence& o) const {
  if (bottom_ || o.bottom_) return bottom();
  return is_top() ? o : *this;
}

Congruence Congruence::add(const Congruence& o) const {
  if (bottom_ || o.bottom_) return bottom();
  const Wide r = static_cast<Wide>(residue_) + o.residue_;
  const Int g = std::gcd(modulus_, o.modulus_);
  if (!fits(r)) return g == 0 ? top() : Congruence(g, static_cast<Int>(wide_mod(r, g)));
  return Congruence(g, static_cast<Int>(r));
}

Congruence Congruence::operator-() const {
  if (bottom_) return bottom();
  return Congruence(modulus_, -residue_);
}

Congruence Congruence::scale(Int c) const {
  if (bottom_) return bottom();
  if (c == 0) return constant(0);
  const Wide m = static_cast<Wide>(modulus_) * (c < 0 ? -static_cast<Wide>(c) : c);
  const Wide r = static_cast<Wide>(residue_) * c;
  if (!fits(m) || !fits(r)) return top();
  return Congruence(static_cast<Int>(m), static_cast<Int>(r));
}

Bound Congruence::next_member(const Bound& v) const {
  if (bottom_) return kPlusInf;
  if (modulus_ == 0) return Bound(residue_) >= v ? Bound(residue_) : kPlusInf;
  if (!v.is_finite()) return v;
  const Wide x = static_cast<Wide>(v.value()) + wide_mod(static_cast<Wide>(residue_) - v.value(), modulus_);
  return Bound::from_wide(x, Round::Up);
}

Bound Congruence::prev_member(const Bound& v) const {
  if (bottom_) return kMinusInf;
  if (modulus_ == 0) return Bound(residue_) <= v ? Bound(residue_) : kMinusInf;
  if (!v.is_finite()) return v;
  const Wide x = static_cast<Wide>(v.value()) - wide_mod(static_cast<Wide>(v.value()) - residue_, modulus_);
  return Bound::from_wide(x, Round::Down);
}

std::string Congruence::to_string() const {
  if (bottom_) return "_|_";
  if (modulus_ == 0) return "{" + std::to_string(residue_) + "}";
  return std::to_string(modulus_) + "Z+" + std::to_string(residue_);
}

}  // namespace rtune
