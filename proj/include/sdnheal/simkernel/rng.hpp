#pragma once

// Platform-stable random draws. std::mt19937_64 is fully specified by the
// standard; the distributions are not, so the conversions live here.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace sdnheal::sim {

using Engine = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Engine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::uint64_t uniform_index(Engine& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(n)) % n;
}

/// Knuth's multiplication method; fine for the small rates used here.
inline int poisson(Engine& rng, double mean) {
  if (mean <= 0.0) return 0;
  const double limit = std::exp(-mean);
  int k = 0;
  double p = uniform01(rng);
  while (p > limit) {
    ++k;
    p *= uniform01(rng);
  }
  return k;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Stateless uniform draw keyed by (seed, tick, name).
inline double keyed_uniform01(std::uint64_t seed, std::int64_t tick, std::string_view name) {
  std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(tick) ^ fnv1a(name)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace sdnheal::sim
