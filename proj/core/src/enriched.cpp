#include "sitekit/enriched.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sitekit/detail/union_find.hpp"

namespace sitekit {

EnrichedCategory discrete_enrichment(CategoryPtr base) { return {std::move(base), {}}; }

namespace {

detail::UnionFind homotopy_classes(const EnrichedCategory& e) {
  detail::UnionFind uf(e.base->num_morphisms());
  for (const auto& edge : e.edges) uf.unite(edge.first, edge.second);
  return uf;
}

ValidationReport check_endpoints(const EnrichedCategory& e) {
  const FiniteCategory& c = *e.base;
  for (const auto& edge : e.edges) {
    if (edge.first >= c.num_morphisms() || edge.second >= c.num_morphisms()) {
      return ValidationReport::fail("endpoints", "edge endpoint is not a morphism");
    }
    if (c.dom(edge.first) != c.dom(edge.second) || c.cod(edge.first) != c.cod(edge.second)) {
      return ValidationReport::fail("endpoints", "edge " + c.morphism_id(edge.first) + " ~ " +
                                                     c.morphism_id(edge.second) +
                                                     " joins different hom-sets");
    }
  }
  return ValidationReport::pass();
}

ValidationReport check_whiskering(const FiniteCategory& c, detail::UnionFind& uf) {
  for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
    for (MorphismIndex f2 : c.hom(c.dom(f), c.cod(f))) {
      if (f2 <= f || !uf.same(f, f2)) continue;
      for (MorphismIndex h : c.morphisms_out_of(c.cod(f))) {
        if (!uf.same(c.compose(h, f), c.compose(h, f2))) {
          return ValidationReport::fail(
              "whiskering", "(" + c.morphism_id(h) + ", " + c.morphism_id(f) + ", " +
                                c.morphism_id(f2) + "): " + c.morphism_id(f) + " ~ " +
                                c.morphism_id(f2) + " but " + c.morphism_id(c.compose(h, f)) +
                                " and " + c.morphism_id(c.compose(h, f2)) + " are not homotopic");
        }
      }
      for (MorphismIndex g : c.morphisms_into(c.dom(f))) {
        if (!uf.same(c.compose(f, g), c.compose(f2, g))) {
          return ValidationReport::fail(
              "whiskering", "(" + c.morphism_id(f) + ", " + c.morphism_id(f2) + ", " +
                                c.morphism_id(g) + "): " + c.morphism_id(f) + " ~ " +
                                c.morphism_id(f2) + " but " + c.morphism_id(c.compose(f, g)) +
                                " and " + c.morphism_id(c.compose(f2, g)) + " are not homotopic");
        }
      }
    }
  }
  return ValidationReport::pass();
}

}  // namespace

ValidationReport validate_enrichment(const EnrichedCategory& e) {
  if (auto r = check_endpoints(e); !r) return r;
  auto uf = homotopy_classes(e);
  return check_whiskering(*e.base, uf);
}

std::vector<std::vector<std::string>> pi0(
    const std::vector<std::string>& vertices,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, std::size_t> index;
  for (const auto& v : vertices) index.emplace(v, index.size());
  auto at = [&](const std::string& v) {
    auto it = index.find(v);
    if (it == index.end()) throw Error("pi0: dangling endpoint " + v);
    return it->second;
  };
  detail::UnionFind uf(vertices.size());
  for (const auto& [a, b] : edges) uf.unite(at(a), at(b));
  std::map<std::size_t, std::vector<std::string>> by_root;
  for (const auto& v : vertices) by_root[uf.find(at(v))].push_back(v);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MorphismIndex HomotopyCategoryData::representative(MorphismIndex ho_morphism) const {
  const auto& members = fiber.at(ho_morphism);
  return *std::min_element(members.begin(), members.end(), [&](auto a, auto b) {
    return base->morphism_id(a) < base->morphism_id(b);
  });
}

bool HomotopyCategoryData::gamma_is_bijective() const {
  return std::all_of(fiber.begin(), fiber.end(), [](const auto& f) { return f.size() == 1; });
}

HomotopyCategoryData homotopy_category(const EnrichedCategory& e) {
  const FiniteCategory& c = *e.base;
  if (auto r = check_endpoints(e); !r) throw Error("enrichment: " + r.violation);
  auto uf = homotopy_classes(e);
  if (auto r = check_whiskering(c, uf); !r) {
    throw Error("enrichment is not whisker-compatible at " + r.violation);
  }

  // least id per class
  std::map<std::size_t, MorphismIndex> least;
  for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
    auto [it, fresh] = least.emplace(uf.find(f), f);
    if (!fresh && c.morphism_id(f) < c.morphism_id(it->second)) it->second = f;
  }

  HomotopyCategoryData out;
  out.base = e.base;
  out.gamma.assign(c.num_morphisms(), kNone);
  std::map<std::size_t, MorphismIndex> class_index;
  std::vector<std::string> names;
  CategoryBuilder builder;
  for (const auto& obj : c.objects()) builder.object(obj);
  for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
    std::size_t root = uf.find(f);
    auto [it, fresh] = class_index.emplace(root, names.size());
    if (fresh) {
      names.push_back("[" + c.morphism_id(least[root]) + "]");
      builder.morphism(names.back(), c.object_id(c.dom(f)), c.object_id(c.cod(f)));
      out.fiber.emplace_back();
    }
    out.gamma[f] = it->second;
    out.fiber[it->second].push_back(f);
  }
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    builder.identity(c.object_id(x), names[out.gamma[c.identity(x)]]);
  }
  for (MorphismIndex g = 0; g < names.size(); ++g) {
    for (MorphismIndex f = 0; f < names.size(); ++f) {
      MorphismIndex rg = out.fiber[g].front();
      MorphismIndex rf = out.fiber[f].front();
      if (c.cod(rf) != c.dom(rg)) continue;
      builder.compose(names[g], names[f], names[out.gamma[c.compose(rg, rf)]]);
    }
  }
  out.ho = builder.build();
  return out;
}

SetPresheaf gamma_star(const HomotopyCategoryData& h, const SetPresheaf& f) {
  if (!same_category(f.category(), *h.ho)) throw Error("gamma_star: presheaf is not over Ho(C)");
  std::vector<std::vector<std::string>> values(h.base->num_objects());
  for (ObjectIndex x = 0; x < values.size(); ++x) values[x] = f.value(x);
  std::vector<ElementMap> restrictions(h.base->num_morphisms());
  for (MorphismIndex m = 0; m < restrictions.size(); ++m) {
    restrictions[m] = f.restriction(h.gamma[m]);
  }
  return SetPresheaf::make(h.base, std::move(values), std::move(restrictions));
}

PresheafMorphism gamma_star(const HomotopyCategoryData& /*h*/, const PresheafMorphism& m,
                            PresheafPtr source_star, PresheafPtr target_star) {
  return {std::move(source_star), std::move(target_star), m.components};
}

PresheafMorphism gamma_star(const HomotopyCategoryData& h, const PresheafMorphism& m) {
  return gamma_star(h, m, share(gamma_star(h, *m.source)), share(gamma_star(h, *m.target)));
}

LeftKanExtension::LeftKanExtension(const HomotopyCategoryData& h, PresheafPtr f)
    : ho_(h.ho), source_(std::move(f)) {
  const FiniteCategory& base = *h.base;
  const FiniteCategory& ho = *h.ho;
  const SetPresheaf& src = *source_;
  if (!same_category(src.category(), base)) {
    throw Error("gamma_shriek: presheaf is not over the base category");
  }
  const std::size_t n = ho.num_objects();

  hom_position_.assign(ho.num_morphisms(), kNone);
  for (ObjectIndex z = 0; z < n; ++z) {
    for (ObjectIndex w = 0; w < n; ++w) {
      auto hom = ho.hom(z, w);
      for (std::size_t i = 0; i < hom.size(); ++i) hom_position_[hom[i]] = i;
    }
  }

  pair_offset_.assign(n, std::vector<std::size_t>(n + 1, 0));
  class_.resize(n);
  representative_.resize(n);
  std::vector<std::vector<std::string>> values(n);

  for (ObjectIndex z = 0; z < n; ++z) {
    std::vector<Pair> pairs;
    for (ObjectIndex w = 0; w < n; ++w) {
      pair_offset_[z][w] = pairs.size();
      for (ElementIndex s = 0; s < src.size(w); ++s) {
        for (MorphismIndex v : ho.hom(z, w)) pairs.push_back({w, s, v});
      }
    }
    pair_offset_[z][n] = pairs.size();

    detail::UnionFind uf(pairs.size());
    for (MorphismIndex u = 0; u < base.num_morphisms(); ++u) {
      ObjectIndex w_from = base.dom(u);
      ObjectIndex w_to = base.cod(u);
      for (ElementIndex s = 0; s < src.size(w_to); ++s) {
        for (MorphismIndex v : ho.hom(z, w_from)) {
          uf.unite(pair_index(z, w_from, src.restrict(u, s), v),
                   pair_index(z, w_to, s, ho.compose(h.gamma[u], v)));
        }
      }
    }

    auto pair_id = [&](const Pair& p) {
      return src.element_id(p.w, p.s) + "|" + ho.morphism_id(p.v);
    };
    std::map<std::size_t, std::pair<std::string, std::size_t>> least;  // root -> (id, pair)
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::string id = pair_id(pairs[i]);
      auto [it, fresh] = least.emplace(uf.find(i), std::make_pair(id, i));
      if (!fresh && id < it->second.first) it->second = {std::move(id), i};
    }
    std::vector<std::pair<std::string, std::size_t>> classes;
    for (auto& [root, entry] : least) classes.push_back(entry);
    std::sort(classes.begin(), classes.end());
    std::map<std::size_t, ElementIndex> element_of_root;
    for (ElementIndex e = 0; e < classes.size(); ++e) {
      element_of_root[uf.find(classes[e].second)] = e;
      values[z].push_back(classes[e].first);
      representative_[z].push_back(pairs[classes[e].second]);
    }
    class_[z].resize(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) class_[z][i] = element_of_root[uf.find(i)];
  }

  std::vector<ElementMap> restrictions(ho.num_morphisms());
  for (MorphismIndex k = 0; k < ho.num_morphisms(); ++k) {
    ObjectIndex z_from = ho.dom(k);
    ObjectIndex z_to = ho.cod(k);
    for (const Pair& p : representative_[z_to]) {
      restrictions[k].push_back(class_of(z_from, p.w, p.s, ho.compose(p.v, k)));
    }
  }
  value_ = share(SetPresheaf::make(ho_, std::move(values), std::move(restrictions)));
}

std::size_t LeftKanExtension::pair_index(ObjectIndex z, ObjectIndex w, ElementIndex s,
                                         MorphismIndex v) const {
  return pair_offset_[z][w] + s * ho_->hom(z, w).size() + hom_position_[v];
}

ElementIndex LeftKanExtension::class_of(ObjectIndex z, ObjectIndex w, ElementIndex s,
                                        MorphismIndex v) const {
  return class_[z][pair_index(z, w, s, v)];
}

SetPresheaf gamma_shriek(const HomotopyCategoryData& h, const SetPresheaf& f) {
  return *LeftKanExtension(h, share(f)).value();
}

PresheafMorphism shriek_morphism(const HomotopyCategoryData& h, const PresheafMorphism& m,
                                 const LeftKanExtension& source, const LeftKanExtension& target) {
  const std::size_t n = h.ho->num_objects();
  PresheafMorphism out{source.value(), target.value(), std::vector<ElementMap>(n)};
  for (ObjectIndex z = 0; z < n; ++z) {
    for (const auto& p : source.representative_[z]) {
      out.components[z].push_back(target.class_of(z, p.w, m.apply(p.w, p.s), p.v));
    }
  }
  return out;
}

PresheafMorphism shriek_transpose(const HomotopyCategoryData& h, const LeftKanExtension& lan,
                                  const PresheafMorphism& m, const PresheafPtr& g) {
  const std::size_t n = h.ho->num_objects();
  PresheafMorphism out{lan.value(), g, std::vector<ElementMap>(n)};
  for (ObjectIndex z = 0; z < n; ++z) {
    for (const auto& p : lan.representative_[z]) {
      out.components[z].push_back(g->restrict(p.v, m.apply(p.w, p.s)));
    }
  }
  return out;
}

PresheafMorphism shriek_unit(const HomotopyCategoryData& h, const LeftKanExtension& lan) {
  const FiniteCategory& ho = *h.ho;
  PresheafMorphism out{lan.source(), share(gamma_star(h, *lan.value())),
                       std::vector<ElementMap>(ho.num_objects())};
  for (ObjectIndex v = 0; v < ho.num_objects(); ++v) {
    for (ElementIndex s = 0; s < lan.source()->size(v); ++s) {
      out.components[v].push_back(lan.class_of(v, v, s, ho.identity(v)));
    }
  }
  return out;
}

PresheafMorphism shriek_counit(const HomotopyCategoryData& h, const LeftKanExtension& lan,
                               const PresheafPtr& g) {
  return shriek_transpose(h, lan, identity_morphism(lan.source()), g);
}

RightKanExtension::RightKanExtension(const HomotopyCategoryData& h, PresheafPtr f)
    : ho_(h.ho), source_(std::move(f)) {
  const FiniteCategory& ho = *h.ho;
  const SetPresheaf& src = *source_;
  if (!same_category(src.category(), *h.base)) {
    throw Error("gamma_lower_star: presheaf is not over the base category");
  }
  const std::size_t n = ho.num_objects();
  position_.assign(ho.num_morphisms(), kNone);
  for (ObjectIndex z = 0; z < n; ++z) {
    auto into = ho.morphisms_into(z);
    for (std::size_t i = 0; i < into.size(); ++i) position_[into[i]] = i;
  }

  sections_.resize(n);
  lookup_.resize(n);
  std::vector<std::vector<std::string>> values(n);
  for (ObjectIndex z = 0; z < n; ++z) {
    PresheafPtr probe = share(gamma_star(h, yoneda(h.ho, z)));
    auto into = ho.morphisms_into(z);
    // where each v into z sits inside the probe
    std::vector<ElementIndex> slot;
    for (MorphismIndex v : into) slot.push_back(probe->index_of(ho.dom(v), ho.morphism_id(v)));

    std::vector<std::pair<std::string, std::vector<ElementIndex>>> found;
    for (const auto& eta : hom_presheaves(probe, source_)) {
      std::vector<ElementIndex> vals;
      std::vector<std::pair<std::string, std::string>> parts;
      for (std::size_t i = 0; i < into.size(); ++i) {
        ObjectIndex v_dom = ho.dom(into[i]);
        vals.push_back(eta.apply(v_dom, slot[i]));
        parts.emplace_back(ho.morphism_id(into[i]), src.element_id(v_dom, vals.back()));
      }
      std::sort(parts.begin(), parts.end());
      std::string id = "{";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) id += ',';
        id += parts[i].first + ":" + parts[i].second;
      }
      found.emplace_back(id + "}", std::move(vals));
    }
    std::sort(found.begin(), found.end());
    for (auto& [id, vals] : found) {
      lookup_[z].emplace(vals, values[z].size());
      values[z].push_back(std::move(id));
      sections_[z].push_back(std::move(vals));
    }
  }

  std::vector<ElementMap> restrictions(ho.num_morphisms());
  for (MorphismIndex k = 0; k < ho.num_morphisms(); ++k) {
    ObjectIndex z_from = ho.dom(k);
    ObjectIndex z_to = ho.cod(k);
    for (const auto& vals : sections_[z_to]) {
      std::vector<ElementIndex> pulled;
      for (MorphismIndex v : ho.morphisms_into(z_from)) {
        pulled.push_back(vals[position_[ho.compose(k, v)]]);
      }
      restrictions[k].push_back(find_section(z_from, pulled));
    }
  }
  value_ = share(SetPresheaf::make(ho_, std::move(values), std::move(restrictions)));
}

ElementIndex RightKanExtension::evaluate(ObjectIndex z, ElementIndex e, MorphismIndex v) const {
  return sections_[z][e][position_[v]];
}

ElementIndex RightKanExtension::find_section(ObjectIndex z,
                                             const std::vector<ElementIndex>& values) const {
  auto it = lookup_[z].find(values);
  if (it == lookup_[z].end()) throw Error("right Kan extension: not a section");
  return it->second;
}

SetPresheaf gamma_lower_star(const HomotopyCategoryData& h, const SetPresheaf& f) {
  return *RightKanExtension(h, share(f)).value();
}

PresheafMorphism lower_star_morphism(const PresheafMorphism& m, const RightKanExtension& source,
                                     const RightKanExtension& target) {
  const FiniteCategory& ho = source.value()->category();
  PresheafMorphism out{source.value(), target.value(), std::vector<ElementMap>(ho.num_objects())};
  for (ObjectIndex z = 0; z < ho.num_objects(); ++z) {
    for (ElementIndex e = 0; e < source.value()->size(z); ++e) {
      std::vector<ElementIndex> vals;
      for (MorphismIndex v : ho.morphisms_into(z)) {
        vals.push_back(m.apply(ho.dom(v), source.evaluate(z, e, v)));
      }
      out.components[z].push_back(target.find_section(z, vals));
    }
  }
  return out;
}

PresheafMorphism lower_star_unit(const HomotopyCategoryData& h, const PresheafPtr& g,
                                 const RightKanExtension& ran) {
  const FiniteCategory& ho = *h.ho;
  PresheafMorphism out{g, ran.value(), std::vector<ElementMap>(ho.num_objects())};
  for (ObjectIndex z = 0; z < ho.num_objects(); ++z) {
    for (ElementIndex e = 0; e < g->size(z); ++e) {
      std::vector<ElementIndex> vals;
      for (MorphismIndex v : ho.morphisms_into(z)) vals.push_back(g->restrict(v, e));
      out.components[z].push_back(ran.find_section(z, vals));
    }
  }
  return out;
}

PresheafMorphism lower_star_counit(const HomotopyCategoryData& h, const RightKanExtension& ran) {
  const FiniteCategory& ho = *h.ho;
  PresheafMorphism out{share(gamma_star(h, *ran.value())), ran.source(),
                       std::vector<ElementMap>(ho.num_objects())};
  for (ObjectIndex v = 0; v < ho.num_objects(); ++v) {
    for (ElementIndex e = 0; e < ran.value()->size(v); ++e) {
      out.components[v].push_back(ran.evaluate(v, e, ho.identity(v)));
    }
  }
  return out;
}

}  // namespace sitekit
