#pragma once

#include <map>
#include <string>
#include <vector>

#include "sitekit/presheaf.hpp"
#include "sitekit/topology.hpp"

namespace sitekit {

/// A compatible choice of sections over the members of a sieve.
/// `assignment[i]` is an element of F(dom f) for f = sieve.members()[i].
struct MatchingFamily {
  Sieve sieve;
  std::vector<ElementIndex> assignment;
};

/// Every matching family of F over S, in lexicographic order.
std::vector<MatchingFamily> matching_families(const SetPresheaf& f, const Sieve& s);
std::size_t count_matching_families(const SetPresheaf& f, const Sieve& s);

/// The family x ↦ (F(g)(x))_{g ∈ S} of an element of F(root S).
std::vector<ElementIndex> restrict_to_sieve(const SetPresheaf& f, const Sieve& s, ElementIndex x);

enum class SheafKind { sheaf, separated, not_separated };

const char* to_string(SheafKind k);

struct Classification {
  SheafKind kind = SheafKind::sheaf;
  // First cover where the canonical map F(X) -> Match(S, F) is not bijective
  // (for `separated`) or not injective (for `not_separated`).
  ObjectIndex witness_object = kNone;
  Sieve witness_sieve;
  std::size_t sections = 0;
  std::size_t families = 0;

  bool is_sheaf() const { return kind == SheafKind::sheaf; }
  bool is_separated() const { return kind != SheafKind::not_separated; }
};

Classification classify_presheaf(const SetPresheaf& f, const GrothendieckTopology& t);

/// One application of the plus-construction.
///
/// The colimit over covering sieves is read off at the minimal cover of each
/// object, which is terminal in the refinement order; classes are represented
/// by their matching family there. Element ids serialize that family as
/// "{f:e,...}" with members sorted by id.
struct PlusConstruction {
  PresheafPtr result;
  PresheafMorphism unit;  // F -> F+
  std::vector<Sieve> minimal;
  // families[x][e]: the matching family on minimal[x] representing element e
  std::vector<std::vector<std::vector<ElementIndex>>> families;
  std::vector<std::map<std::vector<ElementIndex>, ElementIndex>> lookup;
};

PlusConstruction plus_construction(const PresheafPtr& f, const GrothendieckTopology& t);

/// m+ : F+ -> G+ for m : F -> G, given both plus constructions.
PresheafMorphism plus_morphism(const PresheafMorphism& m, const PlusConstruction& source,
                               const PlusConstruction& target);

struct SheafificationResult {
  PresheafPtr sheaf;
  PresheafMorphism unit;  // F -> αF, composite of both plus units
  PlusConstruction first;
  PlusConstruction second;
};

/// Plus-construction applied twice.
SheafificationResult sheafify(const PresheafPtr& f, const GrothendieckTopology& t);

/// α(m) between already computed sheafifications of m's ends.
PresheafMorphism sheafify_morphism(const PresheafMorphism& m, const SheafificationResult& source,
                                   const SheafificationResult& target);

struct IsoVerdict {
  bool iso = true;
  ObjectIndex witness = kNone;  // where α(m) fails to be bijective
  explicit operator bool() const { return iso; }
};

/// Whether m becomes a bijection after sheafification.
IsoVerdict is_tau_iso(const PresheafMorphism& m, const GrothendieckTopology& t);
IsoVerdict is_tau_iso(const PresheafMorphism& m, const SheafificationResult& source,
                      const SheafificationResult& target);

}  // namespace sitekit
