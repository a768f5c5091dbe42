#pragma once

#include <cstdint>
#include <vector>

#include "sitekit/presheaf.hpp"

namespace sitekit {

/// Presheaves with every value of size at most `bound`.
struct PresheafSample {
  std::vector<PresheafPtr> presheaves;
  bool exhaustive = false;  // false when the population hit the limit and was sampled
};

/// Element ids used for generated presheaves: "a", "b", ...
std::string element_name(std::size_t i);

/// Every presheaf on c with values {a, b, ...} of size <= bound, in a fixed
/// order (by size vector, then restriction tables). Stops after `limit`.
/// The bool is set when the enumeration was cut short.
std::vector<PresheafPtr> enumerate_presheaves(const CategoryPtr& c, std::size_t bound,
                                              std::size_t limit, bool* truncated = nullptr);

/// A random presheaf with values of size <= bound, or nullptr if none was found
/// within the retry budget (cannot happen for bound >= 1, where constants exist,
/// unless every attempt stalls).
PresheafPtr random_presheaf(const CategoryPtr& c, std::size_t bound, std::uint64_t seed);

/// The full population when it has at most `limit` members, otherwise `limit`
/// distinct random presheaves drawn from `seed`.
PresheafSample sample_presheaves(const CategoryPtr& c, std::size_t bound, std::size_t limit,
                                 std::uint64_t seed);

}  // namespace sitekit
