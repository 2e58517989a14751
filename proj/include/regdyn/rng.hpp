#pragma once

#include <cstdint>
#include <random>

#include "regdyn/scalar.hpp"

namespace regdyn {

/// mt19937_64 with a portable range mapping (rejection sampling), so a seed
/// gives the same stream with every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long>(gen_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return lo + static_cast<long>(r % span);
  }

  /// num / den with |num| <= max_num and 1 <= den <= max_den.
  Rational rational(long max_num, long max_den) {
    const long num = uniform_int(-max_num, max_num);
    const long den = uniform_int(1, max_den);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  /// Like rational() but never zero.
  Rational nonzero_rational(long max_num, long max_den) {
    Rational q;
    do {
      q = rational(max_num, max_den);
    } while (q == 0);
    return q;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace regdyn
