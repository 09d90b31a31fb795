#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace spacsim {

// Counter-based SplitMix64. The k-th output of the stream with seed s is the
// SplitMix64 finalizer applied to s + (k+1)*GOLDEN, i.e. exactly the k-th
// value the sequential SplitMix64 generator would return from state s. Using
// it as a pure function of (seed, counter) makes every trial addressable:
// chunked or parallel generation reproduces the serial stream bit for bit.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
  return splitmix64_mix(seed + (k + 1) * kGolden);
}

/// Uniform double in the half-open interval (0, 1]: the top 53 bits shifted
/// into the mantissa, plus one, scaled by 2^-53. Never returns 0, so it is
/// safe under log(); 1 is included (log(1) = 0 is harmless).
constexpr double uniform01_at(std::uint64_t seed, std::uint64_t k) {
  return static_cast<double>((splitmix64_at(seed, k) >> 11) + 1) * 0x1p-53;
}

/// Minimal sequential view over the counter stream, for call sites that want
/// generator semantics rather than direct addressing.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  std::uint64_t next_u64() { return splitmix64_at(seed_, counter_++); }
  double next_uniform01() { return uniform01_at(seed_, counter_++); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }
  void seek(std::uint64_t counter) { counter_ = counter; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

/// Standard complex Gaussian (E[z] = 0, E[|z|^2] = 1, real and imaginary
/// parts independent N(0, 1/2)) via the polar Box-Muller map. Consumes
/// exactly two uniforms -- no rejection, so stream positions are static.
inline std::complex<double> standard_complex_gaussian(double u1, double u2) {
  const double radius = std::sqrt(-std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace spacsim
