#ifndef PARETOEST_RNG_HPP
#define PARETOEST_RNG_HPP

#include <cstdint>

namespace paretoest {

// Counter-based deterministic uniforms built on the SplitMix64 finalizer.
// Every draw is a pure function of (key, counter), so parallel consumers
// with derived keys reproduce bit-identically in any execution order.

inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// Stream value i of the SplitMix64 sequence seeded with `key`.
inline std::uint64_t stream64(std::uint64_t key, std::uint64_t i) noexcept {
  return mix64(key + (i + 1) * kGolden);
}

/// Child key for (a, b), e.g. (cell index, replication index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b) noexcept {
  std::uint64_t h = mix64(seed ^ (a + 1) * kGolden);
  return mix64(h + (b + 1) * kGolden);
}

/// Uniform on [0, 1); never returns 1.0 (53-bit mantissa draw).
inline double uniform01(std::uint64_t key, std::uint64_t counter) noexcept {
  return static_cast<double>(stream64(key, counter) >> 11) * 0x1.0p-53;
}

}  // namespace paretoest

#endif  // PARETOEST_RNG_HPP
