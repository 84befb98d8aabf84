#pragma once

#include <cmath>
#include <cstdint>

namespace confpoly {

/// Counter-based deterministic generator keyed by (seed, stream).
/// Output i is a pure function of (seed, stream, i), so independent workers
/// drawing from distinct streams reproduce the same union of samples
/// regardless of how work is sharded. The word function is the splitmix64
/// finalizer applied to a keyed Weyl sequence.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed, uint64_t stream = 0)
      : key_(mix(mix(seed + 0x9E3779B97F4A7C15ull) ^
                 mix(stream + 0xBF58476D1CE4E5B9ull))) {}

  uint64_t next_u64() { return mix(key_ + (counter_++) * 0x9E3779B97F4A7C15ull); }

  /// Uniform double in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Standard normal via Box-Muller (uses two draws).
  double normal() {
    double u1 = next_double();
    while (u1 == 0.0) u1 = next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  uint64_t counter() const { return counter_; }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace confpoly
