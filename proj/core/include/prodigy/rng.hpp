#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace prodigy {

/// SplitMix64 stream generator.
///
/// Initial state is finalize(seed + gamma * (stream + 1)); each draw advances
/// the state by the 64-bit golden gamma and outputs the standard SplitMix64
/// finalizer of the new state. The sequence is therefore a pure function of
/// (seed, stream, call index) and portable across platforms, which keeps
/// seeded experiment configs reproducible. normal() is Box-Muller on two
/// uniform draws, no caching.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(finalize(seed + kGamma * (stream + 1))) {}

  std::uint64_t next_u64() { return finalize(state_ += kGamma); }

  /// Uniform in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    double u1 = uniform01();
    const double u2 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

}  // namespace prodigy
