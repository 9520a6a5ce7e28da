#pragma once

#include <cstdint>

namespace nlft {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (Steele, Lea, Flood).
inline constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Counter-based generator: draw k of stream (seed, s0, s1) is a pure
/// function of those four integers, so trials replay in isolation and
/// scheduling order cannot change results.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t s0 = 0, std::uint64_t s1 = 0)
      : key_(derive(seed, s0, s1)) {}

  std::uint64_t bits() noexcept {
    return detail::mix64(key_ + (++count_) * detail::kGolden);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() noexcept { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  /// Uniform double in [a, b).
  double uniform(double a, double b) noexcept { return a + uniform() * (b - a); }

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t s0, std::uint64_t s1) noexcept {
    std::uint64_t k = detail::mix64(seed + detail::kGolden);
    k = detail::mix64(k ^ (s0 + detail::kGolden));
    k = detail::mix64(k ^ (s1 + detail::kGolden));
    return k;
  }

private:
  std::uint64_t key_;
  std::uint64_t count_ = 0;
};

/// Sub-seed for trial i of a seeded ensemble.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  return CounterRng::derive(seed, trial, 0x7261696Cull);
}

}  // namespace nlft
