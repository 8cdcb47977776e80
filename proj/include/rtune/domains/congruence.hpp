// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "rtune/domains/bound.hpp"

namespace rtune {

/// The congruence class aZ + b. a == 0 denotes the singleton {b}; a == 1 is top.
/// For a > 0 the residue is kept in [0, a).
class Congruence {
 public:
  Congruence(Int modulus, Int residue);

  static Congruence top() { return Congruence(1, 0); }
  static Congruence bottom() { return Congruence(); }
  static Congruence constant(Int v) { return Congruence(0, v); }

  bool is_bottom() const { return bottom_; }
  bool is_top() const { return !bottom_ && modulus_ == 1; }
  Int modulus() const { return modulus_; }
  Int residue() const { return residue_; }
  bool contains(Int v) const;

  bool leq(const Congruence& o) const;
  bool operator==(const Congruence& o) const = default;

  /// gcd(a1, a2, |b1 - b2|) Z + b1.
  Congruence join(const Congruence& o) const;
  /// Chinese remaindering; bottom when the classes are disjoint.
  Congruence meet(const Congruence& o) const;
  /// Jumps to top on any change.
  Congruence widen(const Congruence& o) const;
  Congruence narrow(const Congruence& o) const;

  Congruence add(const Congruence& o) const;
  Congruence operator-() const;
  Congruence scale(Int c) const;

  /// Smallest member >= v, largest member <= v (v finite), if any.
  Bound next_member(const Bound& v) const;
  Bound prev_member(const Bound& v) const;

  std::string to_string() const;

 private:
  Congruence() = default;

  bool bottom_ = true;
  Int modulus_ = 1;
  Int residue_ = 0;
};

}  // namespace rtune
