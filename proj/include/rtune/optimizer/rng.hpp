// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace rtune {

/// The single random stream of the tuner: a 64-bit Mersenne twister with
/// draws defined here rather than by the standard library distributions, so
/// sequences are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform in [0, n) by rejection of the biased tail; n > 0.
  std::size_t index(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = (0 - bound) % bound;  // 2^64 mod n
    std::uint64_t x;
    do {
      x = next();
    } while (x < limit);
    return static_cast<std::size_t>(x % bound);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rtune
