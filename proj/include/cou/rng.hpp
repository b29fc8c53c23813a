#pragma once

#include <cstdint>

#include "cou/numeric.hpp"

namespace cou {

/// SplitMix64 finalizer: a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// SplitMix64 generator (Steele, Lea & Flood). One instance per path; streams
/// for distinct (seed, index) pairs start from mixed, well-separated states.
class SplitMix64 {
public:
  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  /// Substream `index` of `seed`; the result depends only on the pair.
  static constexpr SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix64(mix64(seed) ^ mix64(index + 0x9E3779B97F4A7C15ULL)));
  }

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform_open0() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }
  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

/// W = N_1 + i N_2 with N_1, N_2 independent N(0,1), so E|W|^2 = 2.
/// Box-Muller: one pair of uniforms gives both components.
cplx complex_normal(SplitMix64& rng);

}  // namespace cou
