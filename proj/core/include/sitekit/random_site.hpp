#pragma once

#include <cstdint>
#include <vector>

#include "sitekit/site.hpp"

namespace sitekit {

struct RandomSiteLimits {
  std::size_t max_objects = 4;
  std::size_t max_morphisms = 8;  // non-identity
  std::size_t max_edges = 6;
  std::size_t max_families = 2;   // generating families per object
};

/// A random valid site drawn from `seed`: associative composition table,
/// whisker-compatible edges (rejection sampled), random generating covers.
/// Objects are named o0, o1, ...; morphisms m0, m1, ....
SiteDocument random_site(std::uint64_t seed, const RandomSiteLimits& limits = {});

/// Seed of the i-th site in a suite run with `seed`.
std::uint64_t random_site_seed(std::uint64_t seed, std::size_t i);

}  // namespace sitekit
