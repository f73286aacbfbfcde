#pragma once

#include <cstdint>

namespace nodalgauge {

// Counter-based random streams: every draw is a pure function of
// (seed, stream, counter), so work items can be generated in any order.

/// splitmix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t counter) {
  return mix64(mix64(seed ^ mix64(stream)) ^ counter);
}

/// Uniform on the open interval (0, 1) with 53 random bits.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t counter) {
  return (static_cast<double>(counter_bits(seed, stream, counter) >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal draw number `index` of a stream (Box-Muller, cosine branch).
double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Seed of the r-th child stream of a base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t child) {
  return counter_bits(base_seed, 0x5eedULL, child);
}

}  // namespace nodalgauge
