#pragma once

#include <cstdint>

namespace latvec {

// Counter-based random numbers: every value is a pure function of
// (seed, key...), so field generation is independent of iteration order
// and of how work is distributed over threads.

inline std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t k) {
  return mix64(h ^ (k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

template <typename... Keys>
std::uint64_t counter_hash(std::uint64_t seed, Keys... keys) {
  std::uint64_t h = mix64(seed);
  ((h = hash_combine(h, static_cast<std::uint64_t>(keys))), ...);
  return h;
}

// Uniform double in [-1, 1), exactly representable construction: the top
// 53 bits of the hash scaled by 2^-52 minus 1.
template <typename... Keys>
double uniform_signed(std::uint64_t seed, Keys... keys) {
  const std::uint64_t h = counter_hash(seed, keys...);
  return static_cast<double>(h >> 11) * 0x1p-52 - 1.0;
}

} // namespace latvec
