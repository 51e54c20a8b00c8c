#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qaoatl/errors.hpp"

namespace qaoatl {

/// Deterministic random source with platform-independent output.
///
/// The engine is std::mt19937_64, whose word sequence for a given seed is
/// fixed by the C++ standard.  All sampling on top of it is implemented
/// here rather than with std::*_distribution, because the standard leaves
/// distribution algorithms unspecified and their output differs across
/// standard libraries.  Every sampler consumes a documented, fixed number
/// of engine words per call, so streams of draws are reproducible
/// bit-for-bit from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Raw 64-bit engine word.
  std::uint64_t next_word() { return engine_(); }

  /// Uniform double in [0, 1) with 53-bit resolution.  One engine word.
  double uniform_real01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).  One engine word.
  double uniform_real(double lo, double hi) {
    if (!(lo < hi)) throw RangeError("uniform_real: requires lo < hi");
    return lo + (hi - lo) * uniform_real01();
  }

  /// Uniform integer in the inclusive range [lo, hi], unbiased via
  /// rejection.  Consumes one engine word per attempt; rejection is rare
  /// for the small ranges used here.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw RangeError("uniform_int: requires lo <= hi");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());  // full range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t word;
    do {
      word = engine_();
    } while (word >= limit);
    return lo + static_cast<std::int64_t>(word % span);
  }

  /// Normal deviate via the Box-Muller transform.  Always consumes exactly
  /// two engine words; the second Box-Muller variate is discarded so the
  /// draw count per call never depends on call history.  1 - u keeps the
  /// logarithm's argument in (0, 1].
  double normal(double mean, double stddev) {
    const double u1 = uniform_real01();
    const double u2 = uniform_real01();
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    return mean + stddev * radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qaoatl
