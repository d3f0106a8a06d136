#pragma once

#include <cmath>
#include <cstdint>

namespace exclasso {

/// SplitMix64 (Steele, Lea, Vigna). Counter-based: the state walks a fixed
/// increment of 0x9e3779b97f4a7c15 and each output is a finalizer of the
/// state, so stream k of a seed is reproducible across platforms.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for (seed, index) pairs, e.g. one per trial.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix(seed + 0x9e3779b97f4a7c15ULL * (index + 1)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double next_uniform(double a, double b) { return a + (b - a) * next_uniform(); }

  /// Standard normal via the Marsaglia polar method (no tables, exactly
  /// reproducible). Pairs are generated and the spare value cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_uniform() - 1.0;
      v = 2.0 * next_uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  /// Integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace exclasso
