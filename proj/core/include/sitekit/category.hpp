#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sitekit/errors.hpp"

namespace sitekit {

using ObjectIndex = std::size_t;
using MorphismIndex = std::size_t;
using ElementIndex = std::size_t;

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct MorphismInfo {
  std::string id;
  ObjectIndex dom = 0;
  ObjectIndex cod = 0;
};

class FiniteCategory;
using CategoryPtr = std::shared_ptr<const FiniteCategory>;

/// A finite category with an explicitly tabulated composition.
///
/// Objects and morphisms are addressed by declaration index internally and by
/// opaque string id at the boundary. The table is not trusted: a category
/// built here may violate the category laws, and `validate_category` is what
/// decides. Every other operation in the library assumes a validated input.
class FiniteCategory {
public:
  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return morphisms_.size(); }

  const std::string& object_id(ObjectIndex x) const { return objects_.at(x); }
  const MorphismInfo& morphism(MorphismIndex f) const { return morphisms_.at(f); }
  const std::string& morphism_id(MorphismIndex f) const { return morphisms_.at(f).id; }
  ObjectIndex dom(MorphismIndex f) const { return morphisms_[f].dom; }
  ObjectIndex cod(MorphismIndex f) const { return morphisms_[f].cod; }

  MorphismIndex identity(ObjectIndex x) const { return identities_.at(x); }
  bool is_identity(MorphismIndex f) const { return identities_[dom(f)] == f; }

  /// g∘f, or kNone when the table has no entry (including non-composable pairs).
  MorphismIndex compose(MorphismIndex g, MorphismIndex f) const {
    return table_[g * morphisms_.size() + f];
  }

  /// Hom(v, x) in declaration order.
  std::span<const MorphismIndex> hom(ObjectIndex v, ObjectIndex x) const {
    return homs_[v * objects_.size() + x];
  }
  std::span<const MorphismIndex> morphisms_into(ObjectIndex x) const { return into_[x]; }
  std::span<const MorphismIndex> morphisms_out_of(ObjectIndex v) const { return out_of_[v]; }

  /// Throws Error on unknown id.
  ObjectIndex object_index(std::string_view id) const;
  MorphismIndex morphism_index(std::string_view id) const;
  bool has_object(std::string_view id) const;
  bool has_morphism(std::string_view id) const;

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<MorphismInfo>& morphisms() const { return morphisms_; }

  bool operator==(const FiniteCategory& other) const;

private:
  friend class CategoryBuilder;

  std::vector<std::string> objects_;
  std::vector<MorphismInfo> morphisms_;
  std::vector<MorphismIndex> identities_;
  std::vector<MorphismIndex> table_;
  std::vector<std::vector<MorphismIndex>> homs_;
  std::vector<std::vector<MorphismIndex>> into_;
  std::vector<std::vector<MorphismIndex>> out_of_;
  std::map<std::string, ObjectIndex, std::less<>> object_lookup_;
  std::map<std::string, MorphismIndex, std::less<>> morphism_lookup_;
};

/// Assembles a FiniteCategory from ids.
///
/// Each object gets an identity morphism named `id_<object>` unless one is
/// declared with `identity()`. Composites with an identity on either side are
/// filled in automatically unless set explicitly; all other composable pairs
/// must be given with `compose()`, otherwise the validator reports a
/// composability failure.
class CategoryBuilder {
public:
  CategoryBuilder& object(std::string id);
  CategoryBuilder& morphism(std::string id, std::string dom, std::string cod);
  /// Declares `morphism_id` (an endomorphism of `object_id`) as its identity.
  CategoryBuilder& identity(std::string object_id, std::string morphism_id);
  /// Records g∘f = h.
  CategoryBuilder& compose(std::string g, std::string f, std::string h);

  /// Throws Error on duplicate or unknown ids, or an identity that is not an
  /// endomorphism. Law violations are left to `validate_category`.
  CategoryPtr build() const;

private:
  struct PendingMorphism {
    std::string id, dom, cod;
  };
  std::vector<std::string> objects_;
  std::vector<PendingMorphism> morphisms_;
  std::vector<std::pair<std::string, std::string>> identities_;
  std::vector<std::tuple<std::string, std::string, std::string>> composites_;
};

/// First violated law (composability table, identity, associativity) with the
/// witnessing morphisms, or pass.
ValidationReport validate_category(const FiniteCategory& c);

}  // namespace sitekit
