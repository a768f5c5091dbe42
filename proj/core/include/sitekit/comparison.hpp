#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sitekit/induced.hpp"
#include "sitekit/site.hpp"

namespace sitekit {

struct LemmaBounds {
  std::size_t bound = 2;             // presheaf value cardinality
  std::size_t max_presheaves = 256;  // per category; larger populations are sampled
  std::size_t max_pairs = 256;       // (source, target) pairs for morphism checks
  std::size_t max_morphisms_per_pair = 6;
  std::uint64_t seed = 7;
};

/// Deliberate corruption before the checks run, to exercise the failure and
/// replay path: `trivial_induced` replaces the induced topology by the
/// trivial one (still a topology, just the wrong one).
enum class Fault { none, trivial_induced };

struct SiteCheck {
  std::string site;
  std::string digest;
  std::vector<CheckOutcome> outcomes;
  bool passed() const;
};

/// F a sheaf for the induced topology while γ*F is not a sheaf for the base
/// topology, with the base-side classification.
struct ConverseWitness {
  PresheafPtr presheaf;
  Classification pulled_back;
};

/// First converse-failure witness in the population, preferring one whose
/// pullback is at least separated.
std::optional<ConverseWitness> find_converse_failure(const HomotopyCategoryData& h,
                                                     const GrothendieckTopology& t,
                                                     const GrothendieckTopology& induced,
                                                     const std::vector<PresheafPtr>& population);

/// Every comparison check on one site, in a fixed order:
/// identification-topologies, cover-reflecting, thickening,
/// compare-sheafifications, reflecting-sheaf-condition, converse-failure,
/// lower-star-transfer, discrete-converse, sheafification.
SiteCheck check_site(const Site& site, const LemmaBounds& bounds, Fault fault = Fault::none);

/// check_site over many sites on worker threads; results in input order.
std::vector<SiteCheck> check_sites(const std::vector<const Site*>& sites, const LemmaBounds& bounds,
                                   Fault fault = Fault::none, std::size_t workers = 0);

}  // namespace sitekit
