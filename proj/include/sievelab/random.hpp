#pragma once

// SplitMix64 (Steele, Lea, Flood 2014; constants as in Vigna's reference
// implementation). Used everywhere a seeded stream is needed so results are
// bit-identical across platforms and thread counts.

#include <complex>
#include <cstdint>

namespace sievelab {

class SplitMix64 {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for (seed, key); lets element k of a sequence be
  /// drawn without generating elements 0..k-1 first.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t key) {
    return SplitMix64(mix(seed ^ mix(key + kGolden)));
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform double in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }
  std::complex<double> complex_symmetric() {
    const double re = symmetric();
    return {re, symmetric()};
  }

 private:
  std::uint64_t state_;
};

}  // namespace sievelab
