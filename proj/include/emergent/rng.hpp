// Deterministic seeded RNG. Hand-rolled (splitmix64) so that reports are
// byte-identical across standard libraries and platforms; std::uniform_*
// distributions are not portable.
#pragma once

#include <cstdint>

#include "emergent/rational.hpp"

namespace emg {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound > 0; rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double unit_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_double(); }

  // Random rational in [-box, box] with denominator <= max_den.
  Rational rational_in_box(long box, long max_den = 16) {
    long den = range(1, max_den);
    long num = range(-box * den, box * den);
    return Rational(num, den);
  }

  // Random rational in (0, hi]; used for Γ=(0,∞) scale sampling.
  Rational positive_rational(long hi_num = 4, long max_den = 8) {
    long den = range(1, max_den);
    long num = range(1, hi_num * den);
    return Rational(num, den);
  }

  Rng fork() { return Rng(next()); }

 private:
  std::uint64_t state_;
};

}  // namespace emg
