#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sitekit/presheaf.hpp"

namespace sitekit {

/// An unoriented homotopy between two parallel morphisms.
struct HomotopyEdge {
  MorphismIndex first = 0;
  MorphismIndex second = 0;
};

/// A finite category whose hom-sets carry reflexive-graph structure: the
/// 1-truncated part of a simplicial enrichment. Reflexive edges are implicit.
struct EnrichedCategory {
  CategoryPtr base;
  std::vector<HomotopyEdge> edges;
};

EnrichedCategory discrete_enrichment(CategoryPtr base);

/// Endpoints parallel, and homotopic morphisms stay homotopic after
/// whiskering on either side (checked over every homotopic pair).
ValidationReport validate_enrichment(const EnrichedCategory& e);

/// Connected components of a graph, each sorted, ordered by least member.
/// Throws Error on an endpoint that is not a vertex.
std::vector<std::vector<std::string>> pi0(const std::vector<std::string>& vertices,
                                          const std::vector<std::pair<std::string, std::string>>& edges);

/// Ho(C) together with the localization functor γ : C₀ -> Ho(C).
///
/// Hom-sets of `ho` are the components of the enriched hom-graphs. A class
/// is named "[f]" after its lexicographically least member f, and classes
/// are declared in order of first appearance among the base morphisms.
struct HomotopyCategoryData {
  CategoryPtr base;
  CategoryPtr ho;
  std::vector<MorphismIndex> gamma;               // base morphism -> ho morphism
  std::vector<std::vector<MorphismIndex>> fiber;  // ho morphism -> base morphisms

  MorphismIndex representative(MorphismIndex ho_morphism) const;
  bool gamma_is_bijective() const;
};

/// Throws Error when the enrichment is malformed or not whisker-compatible,
/// naming the witnessing triple.
HomotopyCategoryData homotopy_category(const EnrichedCategory& e);

/// Precomposition with γ.
SetPresheaf gamma_star(const HomotopyCategoryData& h, const SetPresheaf& f);
PresheafMorphism gamma_star(const HomotopyCategoryData& h, const PresheafMorphism& m,
                            PresheafPtr source_star, PresheafPtr target_star);
PresheafMorphism gamma_star(const HomotopyCategoryData& h, const PresheafMorphism& m);

/// γ_!F as the coend (⊔_W F(W) × Hom_ho(Z, W)) / ~ with (F(u)s, v) ~ (s, γ(u)∘v).
///
/// A pair (s, v) is written "s|v"; a class carries the least id among its
/// pairs.
class LeftKanExtension {
public:
  LeftKanExtension(const HomotopyCategoryData& h, PresheafPtr f);

  const PresheafPtr& value() const { return value_; }
  const PresheafPtr& source() const { return source_; }
  /// Class of (s ∈ F(w), v : z -> w in ho) inside value(z).
  ElementIndex class_of(ObjectIndex z, ObjectIndex w, ElementIndex s, MorphismIndex v) const;

private:
  std::size_t pair_index(ObjectIndex z, ObjectIndex w, ElementIndex s, MorphismIndex v) const;

  CategoryPtr ho_;
  PresheafPtr source_;
  PresheafPtr value_;
  // pair_offset_[z][w]: first flat index of pairs (s, v) with s ∈ F(w), v : z -> w
  std::vector<std::vector<std::size_t>> pair_offset_;
  std::vector<std::size_t> hom_position_;  // position of v in Hom_ho(dom v, cod v)
  std::vector<std::vector<ElementIndex>> class_;  // [z][flat pair] -> element of value(z)
  struct Pair {
    ObjectIndex w;
    ElementIndex s;
    MorphismIndex v;
  };
  std::vector<std::vector<Pair>> representative_;  // [z][element]

  friend PresheafMorphism shriek_morphism(const HomotopyCategoryData&, const PresheafMorphism&,
                                          const LeftKanExtension&, const LeftKanExtension&);
  friend PresheafMorphism shriek_transpose(const HomotopyCategoryData&, const LeftKanExtension&,
                                           const PresheafMorphism&, const PresheafPtr&);
};

SetPresheaf gamma_shriek(const HomotopyCategoryData& h, const SetPresheaf& f);

/// γ_!(m) for m : F -> F'.
PresheafMorphism shriek_morphism(const HomotopyCategoryData& h, const PresheafMorphism& m,
                                 const LeftKanExtension& source, const LeftKanExtension& target);
/// Adjoint transpose of m : F -> γ*G, the map γ_!F -> G sending (s, v) to G(v)(m(s)).
PresheafMorphism shriek_transpose(const HomotopyCategoryData& h, const LeftKanExtension& lan,
                                  const PresheafMorphism& m, const PresheafPtr& g);
/// η_F : F -> γ*γ_!F, s ↦ (s, id).
PresheafMorphism shriek_unit(const HomotopyCategoryData& h, const LeftKanExtension& lan);
/// ε_G : γ_!γ*G -> G; `lan` must be the extension of γ*G.
PresheafMorphism shriek_counit(const HomotopyCategoryData& h, const LeftKanExtension& lan,
                               const PresheafPtr& g);

/// γ_*F as the end: γ_*F(Z) = hom(γ*y_ho(Z), F).
///
/// A section is identified by its values on the ho-morphisms v into Z,
/// written "{v:e,...}" sorted by v.
class RightKanExtension {
public:
  RightKanExtension(const HomotopyCategoryData& h, PresheafPtr f);

  const PresheafPtr& value() const { return value_; }
  const PresheafPtr& source() const { return source_; }
  /// η_V(v) for the section `e` of value(z) and v : V -> z in ho.
  ElementIndex evaluate(ObjectIndex z, ElementIndex e, MorphismIndex v) const;
  /// Section of value(z) with the given values on morphisms_into(z) of ho, in order.
  ElementIndex find_section(ObjectIndex z, const std::vector<ElementIndex>& values) const;

private:
  CategoryPtr ho_;
  PresheafPtr source_;
  PresheafPtr value_;
  std::vector<std::size_t> position_;  // ho morphism -> position in morphisms_into(cod)
  std::vector<std::vector<std::vector<ElementIndex>>> sections_;  // [z][e] values per v
  std::vector<std::map<std::vector<ElementIndex>, ElementIndex>> lookup_;
};

SetPresheaf gamma_lower_star(const HomotopyCategoryData& h, const SetPresheaf& f);

/// γ_*(m) for m : F -> F'.
PresheafMorphism lower_star_morphism(const PresheafMorphism& m, const RightKanExtension& source,
                                     const RightKanExtension& target);
/// η_G : G -> γ_*γ*G; `ran` must be the extension of γ*G.
PresheafMorphism lower_star_unit(const HomotopyCategoryData& h, const PresheafPtr& g,
                                 const RightKanExtension& ran);
/// ε_F : γ*γ_*F -> F, η ↦ η_V([id_V]).
PresheafMorphism lower_star_counit(const HomotopyCategoryData& h, const RightKanExtension& ran);

}  // namespace sitekit
