#pragma once

#include <cmath>
#include <cstdint>

namespace alg {

/// Small counter-free PRNG (splitmix64).  Used everywhere randomness is
/// needed so that seeded runs are reproducible across platforms and standard
/// library versions.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1).
  double u01() { return (next() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

  /// Standard normal (Box-Muller, cosine branch only; one value per call).
  double normal() {
    const double u1 = u01();
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  /// Unit exponential.
  double exponential() { return -std::log(u01()); }

private:
  std::uint64_t state_;
};

/// Decorrelated stream seed for substream `index` of a user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return g.next();
}

}  // namespace alg
