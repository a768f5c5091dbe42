#include "sitekit/category.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace sitekit {

ObjectIndex FiniteCategory::object_index(std::string_view id) const {
  auto it = object_lookup_.find(id);
  if (it == object_lookup_.end()) throw Error("unknown object: " + std::string(id));
  return it->second;
}

MorphismIndex FiniteCategory::morphism_index(std::string_view id) const {
  auto it = morphism_lookup_.find(id);
  if (it == morphism_lookup_.end()) throw Error("unknown morphism: " + std::string(id));
  return it->second;
}

bool FiniteCategory::has_object(std::string_view id) const {
  return object_lookup_.find(id) != object_lookup_.end();
}

bool FiniteCategory::has_morphism(std::string_view id) const {
  return morphism_lookup_.find(id) != morphism_lookup_.end();
}

bool FiniteCategory::operator==(const FiniteCategory& other) const {
  if (objects_ != other.objects_ || identities_ != other.identities_ || table_ != other.table_) {
    return false;
  }
  if (morphisms_.size() != other.morphisms_.size()) return false;
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    const auto& a = morphisms_[i];
    const auto& b = other.morphisms_[i];
    if (a.id != b.id || a.dom != b.dom || a.cod != b.cod) return false;
  }
  return true;
}

CategoryBuilder& CategoryBuilder::object(std::string id) {
  objects_.push_back(std::move(id));
  return *this;
}

CategoryBuilder& CategoryBuilder::morphism(std::string id, std::string dom, std::string cod) {
  morphisms_.push_back({std::move(id), std::move(dom), std::move(cod)});
  return *this;
}

CategoryBuilder& CategoryBuilder::identity(std::string object_id, std::string morphism_id) {
  identities_.emplace_back(std::move(object_id), std::move(morphism_id));
  return *this;
}

CategoryBuilder& CategoryBuilder::compose(std::string g, std::string f, std::string h) {
  composites_.emplace_back(std::move(g), std::move(f), std::move(h));
  return *this;
}

CategoryPtr CategoryBuilder::build() const {
  auto c = std::make_shared<FiniteCategory>();
  for (const auto& id : objects_) {
    if (!c->object_lookup_.emplace(id, c->objects_.size()).second) {
      throw Error("duplicate object: " + id);
    }
    c->objects_.push_back(id);
  }
  const std::size_t n = c->objects_.size();

  auto add_morphism = [&](const std::string& id, ObjectIndex dom, ObjectIndex cod) {
    if (!c->morphism_lookup_.emplace(id, c->morphisms_.size()).second) {
      throw Error("duplicate morphism: " + id);
    }
    c->morphisms_.push_back({id, dom, cod});
  };

  std::map<std::string, std::string> declared_identity;
  for (const auto& [obj, mor] : identities_) {
    c->object_index(obj);
    if (!declared_identity.emplace(obj, mor).second) {
      throw Error("second identity declared for object: " + obj);
    }
  }
  for (const auto& m : morphisms_) {
    add_morphism(m.id, c->object_index(m.dom), c->object_index(m.cod));
  }
  c->identities_.assign(n, kNone);
  for (ObjectIndex x = 0; x < n; ++x) {
    auto it = declared_identity.find(c->objects_[x]);
    if (it != declared_identity.end()) {
      MorphismIndex f = c->morphism_index(it->second);
      if (c->dom(f) != x || c->cod(f) != x) {
        throw Error("identity " + it->second + " is not an endomorphism of " + c->objects_[x]);
      }
      c->identities_[x] = f;
    } else {
      // Implicit identities are appended after the declared morphisms.
      add_morphism("id_" + c->objects_[x], x, x);
      c->identities_[x] = c->morphisms_.size() - 1;
    }
  }

  const std::size_t m = c->morphisms_.size();
  c->table_.assign(m * m, kNone);
  std::vector<bool> explicit_entry(m * m, false);
  for (const auto& [g, f, h] : composites_) {
    MorphismIndex gi = c->morphism_index(g);
    MorphismIndex fi = c->morphism_index(f);
    MorphismIndex hi = c->morphism_index(h);
    if (explicit_entry[gi * m + fi]) throw Error("composite listed twice: " + g + "∘" + f);
    c->table_[gi * m + fi] = hi;
    explicit_entry[gi * m + fi] = true;
  }
  for (MorphismIndex f = 0; f < m; ++f) {
    MorphismIndex id_cod = c->identities_[c->cod(f)];
    MorphismIndex id_dom = c->identities_[c->dom(f)];
    if (!explicit_entry[id_cod * m + f]) c->table_[id_cod * m + f] = f;
    if (!explicit_entry[f * m + id_dom]) c->table_[f * m + id_dom] = f;
  }

  c->homs_.assign(n * n, {});
  c->into_.assign(n, {});
  c->out_of_.assign(n, {});
  for (MorphismIndex f = 0; f < m; ++f) {
    c->homs_[c->dom(f) * n + c->cod(f)].push_back(f);
    c->into_[c->cod(f)].push_back(f);
    c->out_of_[c->dom(f)].push_back(f);
  }
  return c;
}

namespace {

std::string pair_witness(const FiniteCategory& c, MorphismIndex g, MorphismIndex f) {
  return "(" + c.morphism_id(g) + ", " + c.morphism_id(f) + ")";
}

}  // namespace

ValidationReport validate_category(const FiniteCategory& c) {
  const std::size_t m = c.num_morphisms();
  for (MorphismIndex g = 0; g < m; ++g) {
    for (MorphismIndex f = 0; f < m; ++f) {
      MorphismIndex h = c.compose(g, f);
      bool composable = c.cod(f) == c.dom(g);
      if (!composable) {
        if (h != kNone) {
          return ValidationReport::fail("composability",
                                        "entry for non-composable pair " + pair_witness(c, g, f));
        }
        continue;
      }
      if (h == kNone) {
        return ValidationReport::fail("composability",
                                      "missing composite for " + pair_witness(c, g, f));
      }
      if (c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g)) {
        return ValidationReport::fail("composability", "composite of " + pair_witness(c, g, f) +
                                                           " is " + c.morphism_id(h) +
                                                           " with wrong domain or codomain");
      }
    }
  }
  for (MorphismIndex f = 0; f < m; ++f) {
    MorphismIndex id_cod = c.identity(c.cod(f));
    MorphismIndex id_dom = c.identity(c.dom(f));
    if (c.compose(id_cod, f) != f) {
      return ValidationReport::fail("identity", "at " + pair_witness(c, id_cod, f));
    }
    if (c.compose(f, id_dom) != f) {
      return ValidationReport::fail("identity", "at " + pair_witness(c, f, id_dom));
    }
  }
  for (MorphismIndex f = 0; f < m; ++f) {
    for (MorphismIndex g : c.morphisms_out_of(c.cod(f))) {
      MorphismIndex gf = c.compose(g, f);
      for (MorphismIndex h : c.morphisms_out_of(c.cod(g))) {
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) {
          return ValidationReport::fail("associativity", "at (" + c.morphism_id(h) + ", " +
                                                             c.morphism_id(g) + ", " +
                                                             c.morphism_id(f) + ")");
        }
      }
    }
  }
  return ValidationReport::pass();
}

}  // namespace sitekit
