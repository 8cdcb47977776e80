// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace rtune {

using Int = std::int64_t;

/// Direction used when a wide intermediate result does not fit a finite bound.
enum class Round { Down, Up };

/// An extended integer in Z ∪ {-oo, +oo}.
///
/// Finite magnitudes are kept below 2^62 so that sums of two finite bounds
/// never overflow. Arithmetic that leaves this range is rounded outward: an
/// upper bound becomes +oo and a lower bound becomes the largest finite value
/// (or -oo / smallest finite value, symmetrically).
class Bound {
 public:
  static constexpr Int kMaxFinite = Int{1} << 62;

  constexpr Bound(Int v) : kind_(Kind::Finite), value_(v) {}  // NOLINT

  static constexpr Bound plus_infinity() { return Bound(Kind::PlusInf); }
  static constexpr Bound minus_infinity() { return Bound(Kind::MinusInf); }

  /// Converts a wide value, rounding it outward in the given direction.
  static Bound from_wide(__int128 v, Round r);

  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_plus_infinity() const { return kind_ == Kind::PlusInf; }
  constexpr bool is_minus_infinity() const { return kind_ == Kind::MinusInf; }

  Int value() const {
    if (!is_finite()) throw std::logic_error("Bound: value of an infinite bound");
    return value_;
  }

  constexpr bool operator==(const Bound& o) const {
    return kind_ == o.kind_ && (kind_ != Kind::Finite || value_ == o.value_);
  }
  constexpr std::strong_ordering operator<=>(const Bound& o) const {
    if (kind_ != o.kind_) {
      return rank() <=> o.rank();
    }
    if (kind_ != Kind::Finite) return std::strong_ordering::equal;
    return value_ <=> o.value_;
  }

  Bound operator-() const;

  /// Sum rounded in direction `r` when it overflows the finite range.
  static Bound add(const Bound& a, const Bound& b, Round r);
  /// Product rounded in direction `r`; 0 * oo is 0.
  static Bound mul(const Bound& a, const Bound& b, Round r);

  std::string to_string() const;

 private:
  enum class Kind : std::uint8_t { MinusInf, Finite, PlusInf };
  explicit constexpr Bound(Kind k) : kind_(k), value_(0) {}
  constexpr int rank() const { return static_cast<int>(kind_); }

  Kind kind_;
  Int value_;
};

inline const Bound kPlusInf = Bound::plus_infinity();
inline const Bound kMinusInf = Bound::minus_infinity();

/// floor(a / b) and ceil(a / b) for b != 0.
Int floor_div(Int a, Int b);
Int ceil_div(Int a, Int b);

}  // namespace rtune
