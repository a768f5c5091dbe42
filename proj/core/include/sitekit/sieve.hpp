#pragma once

#include <span>
#include <string>
#include <vector>

#include "sitekit/category.hpp"
#include "sitekit/presheaf.hpp"

namespace sitekit {

/// A set of morphisms into `root` closed under precomposition, stored as a
/// membership mask over all morphisms of the category.
class Sieve {
public:
  Sieve() = default;
  Sieve(ObjectIndex root, std::vector<bool> mask) : root_(root), mask_(std::move(mask)) {}

  ObjectIndex root() const { return root_; }
  bool contains(MorphismIndex f) const { return mask_[f]; }
  const std::vector<bool>& mask() const { return mask_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  /// Members in declaration order.
  std::vector<MorphismIndex> members() const;
  bool subset_of(const Sieve& other) const;

  friend bool operator==(const Sieve& a, const Sieve& b) {
    return a.root_ == b.root_ && a.mask_ == b.mask_;
  }
  friend bool operator<(const Sieve& a, const Sieve& b) {
    if (a.root_ != b.root_) return a.root_ < b.root_;
    return a.mask_ < b.mask_;
  }

private:
  ObjectIndex root_ = 0;
  std::vector<bool> mask_;
};

/// Smallest sieve on x containing the generators. Throws Error when a
/// generator does not land in x.
Sieve generate_sieve(const FiniteCategory& c, ObjectIndex x,
                     std::span<const MorphismIndex> generators);
Sieve maximal_sieve(const FiniteCategory& c, ObjectIndex x);
Sieve empty_sieve(const FiniteCategory& c, ObjectIndex x);
/// h*(S) = {g | h∘g ∈ S}. Throws Error when cod(h) is not the root of S.
Sieve pullback_sieve(const FiniteCategory& c, MorphismIndex h, const Sieve& s);
Sieve intersect(const Sieve& a, const Sieve& b);
bool is_maximal(const FiniteCategory& c, const Sieve& s);

/// Closure and root checks.
ValidationReport validate_sieve(const FiniteCategory& c, const Sieve& s);

/// Every sieve on x, sorted.
std::vector<Sieve> all_sieves(const FiniteCategory& c, ObjectIndex x);

/// The sieve as a subpresheaf of y(root); element ids are morphism ids.
Subobject sieve_presheaf(const CategoryPtr& c, const Sieve& s);

/// "{f1, f2}" with members sorted by id.
std::string format_sieve(const FiniteCategory& c, const Sieve& s);
/// As format_sieve, but the maximal sieve prints as "maximal".
std::string describe_sieve(const FiniteCategory& c, const Sieve& s);

/// Parses "f1,f2@y" (generators at object); "@y" is the empty sieve.
Sieve parse_sieve(const FiniteCategory& c, const std::string& text);

}  // namespace sitekit
