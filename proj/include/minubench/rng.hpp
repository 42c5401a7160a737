#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace minubench {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic random stream (xoshiro256++ seeded via splitmix64).
///
/// The standard <random> engines are portable but the distributions are not;
/// every draw here is specified down to the bit so that seeded pipelines
/// reproduce byte-identical output across platforms and compilers.
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

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform integer in [lo, hi], inclusive on both ends.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return (next_u64() >> 63) != 0; }

  /// Gaussian draw via Box-Muller (cosine branch only, so one draw always
  /// consumes exactly two uniforms).
  double normal(double mean, double stddev) {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(kTwoPi * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

/// Order-independent seed derivation for per-trial streams. FNV-1a over the
/// components, then splitmix-finalized.
class SeedHasher {
 public:
  SeedHasher& mix(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      step(static_cast<unsigned char>(v >> (8 * i)));
    }
    return *this;
  }

  SeedHasher& mix(std::string_view s) {
    for (unsigned char c : s) step(c);
    step(0xff);  // length delimiter so ("ab","c") != ("a","bc")
    return *this;
  }

  std::uint64_t finish() const {
    std::uint64_t x = hash_;
    return splitmix64(x);
  }

 private:
  void step(unsigned char byte) {
    hash_ ^= byte;
    hash_ *= 0x100000001b3ull;
  }

  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::string_view finger_id,
                                 std::string_view impression_id,
                                 std::uint64_t trial, std::uint64_t level = 0) {
  return SeedHasher{}
      .mix(master_seed)
      .mix(finger_id)
      .mix(impression_id)
      .mix(trial)
      .mix(level)
      .finish();
}

}  // namespace minubench
