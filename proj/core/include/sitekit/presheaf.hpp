#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sitekit/category.hpp"

namespace sitekit {

/// Function table: position i holds the image of element i.
using ElementMap = std::vector<ElementIndex>;

/// A presheaf of finite sets on a finite category.
///
/// Element ids are kept sorted per object, so element indices coincide with
/// the sorted order of ids; `restriction(f)` for f: V -> X maps indices of
/// value(X) to indices of value(V).
class SetPresheaf {
public:
  /// `restrictions[f]` is indexed by positions in `values[cod f]` as given;
  /// ids are sorted afterwards and the tables remapped. Throws Error on
  /// duplicate element ids or malformed tables. Functoriality is not checked
  /// here, see validate_presheaf.
  static SetPresheaf make(CategoryPtr category, std::vector<std::vector<std::string>> values,
                          std::vector<ElementMap> restrictions);

  const FiniteCategory& category() const { return *category_; }
  const CategoryPtr& category_ptr() const { return category_; }

  std::size_t size(ObjectIndex x) const { return values_[x].size(); }
  const std::vector<std::string>& value(ObjectIndex x) const { return values_[x]; }
  const std::string& element_id(ObjectIndex x, ElementIndex e) const { return values_[x][e]; }
  const ElementMap& restriction(MorphismIndex f) const { return restrictions_[f]; }
  ElementIndex restrict(MorphismIndex f, ElementIndex e) const { return restrictions_[f][e]; }

  /// kNone if absent.
  ElementIndex find(ObjectIndex x, std::string_view id) const;
  /// Throws Error if absent.
  ElementIndex index_of(ObjectIndex x, std::string_view id) const;

  std::size_t total_size() const;

  bool operator==(const SetPresheaf& other) const;

private:
  CategoryPtr category_;
  std::vector<std::vector<std::string>> values_;
  std::vector<ElementMap> restrictions_;
};

using PresheafPtr = std::shared_ptr<const SetPresheaf>;

inline PresheafPtr share(SetPresheaf p) { return std::make_shared<const SetPresheaf>(std::move(p)); }

/// String-level construction, mainly for parsing and tests. Restrictions along
/// identities default to the identity; every other restriction must be given.
class PresheafBuilder {
public:
  explicit PresheafBuilder(CategoryPtr category) : category_(std::move(category)) {}

  PresheafBuilder& value(std::string object, std::vector<std::string> elements);
  /// `table` pairs (element of value(cod f), its restriction in value(dom f)).
  PresheafBuilder& restrict(std::string morphism,
                            std::vector<std::pair<std::string, std::string>> table);

  SetPresheaf build() const;

private:
  CategoryPtr category_;
  std::map<std::string, std::vector<std::string>> values_;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> restrictions_;
};

/// A natural transformation source -> target.
struct PresheafMorphism {
  PresheafPtr source;
  PresheafPtr target;
  std::vector<ElementMap> components;  // per object

  ElementIndex apply(ObjectIndex x, ElementIndex e) const { return components[x][e]; }
  bool operator==(const PresheafMorphism& other) const;
};

ValidationReport validate_presheaf(const SetPresheaf& f, const FiniteCategory& c);
ValidationReport validate_morphism(const PresheafMorphism& m);

/// Same category, compared structurally when the pointers differ.
bool same_category(const FiniteCategory& a, const FiniteCategory& b);

/// y(X): value(V) = Hom(V, X), restriction is precomposition.
SetPresheaf yoneda(const CategoryPtr& c, ObjectIndex x);
SetPresheaf yoneda(const CategoryPtr& c, std::string_view x);

/// All natural transformations u -> f. Throws Error on category mismatch.
std::vector<PresheafMorphism> hom_presheaves(const PresheafPtr& u, const PresheafPtr& f);
std::size_t count_hom_presheaves(const SetPresheaf& u, const SetPresheaf& f);

SetPresheaf empty_presheaf(const CategoryPtr& c);
/// Every value is `elements`, every restriction the identity.
SetPresheaf constant_presheaf(const CategoryPtr& c, std::vector<std::string> elements);

PresheafMorphism identity_morphism(const PresheafPtr& f);
/// second∘first
PresheafMorphism compose(const PresheafMorphism& second, const PresheafMorphism& first);
/// Componentwise bijective.
bool is_isomorphism(const PresheafMorphism& m);
/// First object where `m` is not bijective, or kNone.
ObjectIndex first_non_bijective(const PresheafMorphism& m);

struct ProductCone {
  PresheafPtr product;
  PresheafMorphism first;
  PresheafMorphism second;
};
/// Element ids are "(a,b)".
ProductCone product(const PresheafPtr& f, const PresheafPtr& g);

/// The unique map into a product induced by two legs.
PresheafMorphism pair_morphism(const PresheafMorphism& first, const PresheafMorphism& second,
                               const ProductCone& cone);

struct Subobject {
  PresheafPtr object;
  PresheafMorphism inclusion;
};
/// Subpresheaf on the given elements, which must be closed under restriction.
Subobject subpresheaf(const PresheafPtr& f, const std::vector<std::vector<bool>>& keep);
/// Equalizer of u, v: F -> G as a subpresheaf of F.
Subobject equalizer(const PresheafMorphism& u, const PresheafMorphism& v);

}  // namespace sitekit
