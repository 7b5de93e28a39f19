#pragma once

// Deterministic splittable randomness.  Each sample index gets its own
// mt19937_64 engine keyed by (seed, index) through SplitMix64 mixing, so
// parallel runs produce identical output for any thread count.

#include <cstdint>
#include <random>

namespace dimerarc {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// A well-mixed 64-bit key for substream `index` of run `seed`.
inline std::uint64_t substream_key(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64_next(s);
  s ^= 0x94d049bb133111ebULL * (index + 1);
  const std::uint64_t b = splitmix64_next(s);
  return a ^ (b + 0x9e3779b97f4a7c15ULL * index);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(substream_key(seed, index));
}

// Unbiased draw from {0, ..., n - 1} by rejection; avoids the
// implementation-defined std::uniform_int_distribution so streams are
// reproducible across standard libraries.
inline std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace dimerarc
