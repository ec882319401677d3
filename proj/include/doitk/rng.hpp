#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace doitk {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of a named sub-stream ("nmf", "spinglass", "baseline", "rewire", ...)
/// derived from the global seed. Stable across platforms (FNV-1a on the name).
inline std::uint64_t derive_seed(std::uint64_t global, std::string_view stream,
                                 std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(global ^ h) + index);
}

inline Rng make_rng(std::uint64_t global, std::string_view stream, std::uint64_t index = 0) {
  return Rng(derive_seed(global, stream, index));
}

/// Uniform double in [0,1) from 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace doitk
