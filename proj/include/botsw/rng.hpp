#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace botsw {

// All randomness flows through mt19937_64 plus the helpers below, never
// through std::uniform_*_distribution (whose output is implementation
// defined). This keeps runs bit-reproducible across standard libraries.

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  // splitmix64 round over seed ^ tag
  std::uint64_t z = seed ^ (tag + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// uniform integer in [0, n), unbiased
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace botsw
