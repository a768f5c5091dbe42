#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sitekit::detail {

/// Only raw engine output is used (no std distributions), so a seed means the
/// same thing on every standard library.
using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t n) { return n == 0 ? 0 : rng() % n; }

inline bool coin(Rng& rng, unsigned percent) { return rng() % 100 < percent; }

/// splitmix64 step; derives independent per-item seeds from one seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(rng, i)]);
}

}  // namespace sitekit::detail
