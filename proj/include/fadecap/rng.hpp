#pragma once

// Self-contained counter-seeded RNG so that Monte Carlo runs are reproducible
// bit-for-bit for a given seed, independent of the standard library.

#include <cmath>
#include <complex>
#include <cstdint>

namespace fadecap {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna), seeded through splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  // Independent substream for batch `index` of a run seeded with `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t sm = seed;
    std::uint64_t mixed = splitmix64(sm) ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return Rng(mixed);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in (0, 1].
  double next_unit_positive() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal pair via Box-Muller.
  void next_normal_pair(double& a, double& b) {
    double u1 = next_unit_positive();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double phi = 6.283185307179586476925286766559 * u2;
    a = r * std::cos(phi);
    b = r * std::sin(phi);
  }

  // Circularly symmetric complex normal, E|Z|^2 = 1.
  std::complex<double> next_complex_normal() {
    double a, b;
    next_normal_pair(a, b);
    return {a * 0.70710678118654752440, b * 0.70710678118654752440};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace fadecap
