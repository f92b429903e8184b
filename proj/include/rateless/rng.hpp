#pragma once

#include <cmath>
#include <cstdint>

namespace rateless {

// All pseudorandomness in the library flows through the SplitMix64 finalizer
// (Steele/Lea/Flood) evaluated in counter mode. Any (key, index) pair maps to
// the same 64-bit word on every platform, which is what lets the encoder and
// the decoder agree on codebook symbols without ever materializing them.

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Key of the named substream `stream` of the generator keyed by `seed`.
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t stream) {
  return mix64((seed + kGoldenGamma) ^ mix64(stream * kGoldenGamma + kGoldenGamma));
}

// Word at position `index` of the stream identified by `key`.
constexpr std::uint64_t stream_at(std::uint64_t key, std::uint64_t index) {
  return mix64(key + (index + 1) * kGoldenGamma);
}

// Uniform double in [0, 1) from a 64-bit word (53 mantissa bits).
inline double to_unit(std::uint64_t u) { return static_cast<double>(u >> 11) * 0x1.0p-53; }

// Uniform double in (0, 1]; safe as a log/Box-Muller argument.
inline double to_unit_pos(std::uint64_t u) {
  return (static_cast<double>(u >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal deviate as a pure function of two words.
inline double gaussian_from(std::uint64_t u1, std::uint64_t u2) {
  const double r = std::sqrt(-2.0 * std::log(to_unit_pos(u1)));
  return r * std::cos(6.283185307179586476925286766559 * to_unit(u2));
}

// Sequential counter-mode generator. Copyable value type; each consumer owns
// its own instance, never shared across workers.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : key_(substream(seed, stream)) {}

  std::uint64_t next_u64() { return stream_at(key_, counter_++); }
  double unit() { return to_unit(next_u64()); }

  double gaussian() {
    const std::uint64_t u1 = next_u64();
    const std::uint64_t u2 = next_u64();
    return gaussian_from(u1, u2);
  }

  // Index into a cumulative distribution given as partial sums over [0, n).
  template <class Cdf>
  int pick(const Cdf& cdf, int n) {
    const double u = unit();
    for (int i = 0; i + 1 < n; ++i) {
      if (u < cdf[static_cast<std::size_t>(i)]) return i;
    }
    return n - 1;
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rateless
