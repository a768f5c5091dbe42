#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sitekit/enriched.hpp"
#include "sitekit/sheaf.hpp"
#include "sitekit/topology.hpp"

namespace sitekit {

/// [J]: the sieve on Ho(C) generated by the γ-images of J's members.
Sieve bracket_sieve(const HomotopyCategoryData& h, const Sieve& j);

/// {f | γ(f) ∈ U}, a sieve on C₀.
Sieve preimage_sieve(const HomotopyCategoryData& h, const Sieve& u);

/// J_Δ = preimage of [J]: every morphism homotopic to a member of J (up to
/// the sieve closure in Ho(C)).
Sieve thicken_sieve(const HomotopyCategoryData& h, const Sieve& j);

/// γ*(U) ↪ γ*(y_ho X) as an explicit subpresheaf inclusion over C₀.
Subobject gamma_star_sieve(const HomotopyCategoryData& h, const Sieve& u);

/// Decides [τ]-covers by the τ-isomorphism criterion on γ*(U) ↪ γ*(y X),
/// caching α_τ(γ* y X) per object.
class BracketCoverTest {
public:
  BracketCoverTest(const HomotopyCategoryData& h, const GrothendieckTopology& t);

  bool operator()(const Sieve& u) const;

private:
  const HomotopyCategoryData* h_;
  const GrothendieckTopology* t_;
  std::vector<PresheafPtr> representable_star_;
  std::vector<SheafificationResult> representable_alpha_;
};

bool is_bracket_cover(const HomotopyCategoryData& h, const GrothendieckTopology& t, const Sieve& u);

struct InducedTopologyReport {
  GrothendieckTopology induced;  // packaged from via_iso_test
  std::vector<std::vector<Sieve>> via_bracket;
  std::vector<std::vector<Sieve>> via_iso_test;
  bool agreement = false;
  ValidationReport validation;  // validate_topology(induced)
  // first disagreement, if any
  std::optional<Sieve> witness;
};

/// Both characterizations of [τ] without judging the outcome.
InducedTopologyReport compute_induced_topology(const HomotopyCategoryData& h,
                                               const GrothendieckTopology& t);

/// As compute_induced_topology, but throws TheoremViolation when the two
/// characterizations disagree or the result is not a topology.
InducedTopologyReport induced_topology(const HomotopyCategoryData& h,
                                       const GrothendieckTopology& t);

/// A property checked over a finite population, with the first failure.
struct Counterexample {
  std::string description;
  std::vector<std::pair<std::string, PresheafPtr>> presheaves;
  // named morphisms between presheaves listed above
  std::vector<std::pair<std::string, PresheafMorphism>> morphisms;
  std::optional<Sieve> sieve;
  bool sieve_in_ho = false;
};

struct CheckOutcome {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;
  std::optional<Counterexample> counterexample;
};

/// For every [τ]-cover U, the preimage {f | γ(f) ∈ U} is a τ-cover.
CheckOutcome check_cover_reflecting(const HomotopyCategoryData& h, const GrothendieckTopology& t,
                                    const GrothendieckTopology& induced);

/// For every J ∈ τ: J ⊆ J_Δ, J_Δ covers, thickening is idempotent,
/// [J] = [J_Δ]; and distinct thickened covers have distinct brackets.
CheckOutcome check_thickening(const HomotopyCategoryData& h, const GrothendieckTopology& t);

/// Induced topology equals the input under γ when γ is bijective.
bool matches_under_gamma(const HomotopyCategoryData& h, const GrothendieckTopology& t,
                         const GrothendieckTopology& induced);

}  // namespace sitekit
