#pragma once

#include <cstdint>

namespace pcm {

/// SplitMix64 output function (Steele, Lea & Flood; constants from Vigna's
/// reference implementation).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent SplitMix64 stream addressed by (seed, ordinal).
///
/// The starting state is mix64(mix64(seed) ^ mix64(ordinal + kStreamSalt)),
/// so any draw can be reproduced from its ordinal alone, independent of how
/// ordinals are spread over threads. All conversions below are fixed
/// integer arithmetic, so sequences are identical on every platform.
class Substream {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamSalt = 0x632be59bd9b4e019ULL;

  constexpr Substream(std::uint64_t seed, std::uint64_t ordinal) noexcept
      : state_(mix64(mix64(seed) ^ mix64(ordinal + kStreamSalt))) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with
  /// rejection, so it is exactly unbiased).
  constexpr std::uint32_t below(std::uint32_t bound) noexcept {
    std::uint64_t m = (next() >> 32) * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = (0u - bound) % bound;
      while (low < threshold) {
        m = (next() >> 32) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  /// Fair coin.
  constexpr bool coin() noexcept { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace pcm
