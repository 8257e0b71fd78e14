#pragma once

#include <cstdint>

namespace gmfineq {

/// SplitMix64 (Steele, Lea & Flood 2014). The whole generator is:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// with all arithmetic mod 2^64. Doubles in [0, 1) take the top 53 bits:
/// (next() >> 11) * 2^-53. Any language with 64-bit unsigned integers
/// reproduces the same streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Uniform in [0, 1).
  double uniform() noexcept;
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Seed of substream `index` under `seed`: the first SplitMix64 output for
/// state seed ^ (index * 0xD1B54A32D192ED03). Used for per-matrix and
/// per-trial streams so results do not depend on evaluation order.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace gmfineq
