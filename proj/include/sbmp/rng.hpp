#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace sbmp {

/// Deterministic 64-bit generator: xoshiro256++ with its four state words
/// seeded by successive splitmix64 outputs. The algorithm is pinned so that a
/// (seed, call sequence) pair reproduces the same stream bit-exactly on every
/// platform this builds on.
///
/// Draw accounting, for reproducibility across refactors:
///   next_u64     - 1 draw
///   next_double  - 1 draw, value in [0,1) with 53-bit resolution
///   uniform      - 1 draw
///   gaussian_pair- 2 draws (Box–Muller, trigonometric form)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0,1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi). One draw.
  double uniform(double lo, double hi) {
    double v = lo + next_double() * (hi - lo);
    if (v >= hi) v = lo;  // fp rounding guard on extreme spans
    return v;
  }

  /// Two independent standard normals from two draws. The first uniform is
  /// shifted into (0,1] so the log is always finite.
  std::pair<double, double> gaussian_pair() {
    const double u1 =
        static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0,1]
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace sbmp
