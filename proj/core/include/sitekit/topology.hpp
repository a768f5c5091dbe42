#pragma once

#include <vector>

#include "sitekit/sieve.hpp"

namespace sitekit {

/// Per object, every covering sieve (the full upward-closed family, not a
/// basis), sorted.
struct GrothendieckTopology {
  CategoryPtr base;
  std::vector<std::vector<Sieve>> covers;

  bool is_covering(const Sieve& s) const;
  /// Intersection of all covers on x. Covers are closed under intersection,
  /// so this is itself a cover.
  Sieve minimal_cover(ObjectIndex x) const;

  friend bool operator==(const GrothendieckTopology& a, const GrothendieckTopology& b) {
    return same_category(*a.base, *b.base) && a.covers == b.covers;
  }
};

/// Sorts and deduplicates the given covers. No axioms are checked.
GrothendieckTopology make_topology(CategoryPtr base, std::vector<std::vector<Sieve>> covers);

/// Only maximal sieves cover.
GrothendieckTopology trivial_topology(const CategoryPtr& base);

/// Maximality, stability, local character (in that order), with witnesses.
ValidationReport validate_topology(const GrothendieckTopology& t);

/// Generator families per object: families[x] lists families of morphisms
/// into x, each generating one covering sieve.
using GeneratingCovers = std::vector<std::vector<std::vector<MorphismIndex>>>;

/// Smallest topology in which every generated sieve covers. Round-robin
/// fixpoint of maximality, pullback stability and local character.
GrothendieckTopology saturate_topology(const CategoryPtr& base, const GeneratingCovers& families);
GrothendieckTopology saturate_topology(const CategoryPtr& base,
                                       const std::vector<std::vector<Sieve>>& sieves);

/// Coverwise inclusion: every a-cover is a b-cover.
bool is_coarser_or_equal(const GrothendieckTopology& a, const GrothendieckTopology& b);

}  // namespace sitekit
