#include "sitekit/presheaf.hpp"

#include <algorithm>
#include <numeric>

#include "sitekit/detail/functional_constraints.hpp"

namespace sitekit {

SetPresheaf SetPresheaf::make(CategoryPtr category, std::vector<std::vector<std::string>> values,
                              std::vector<ElementMap> restrictions) {
  const FiniteCategory& c = *category;
  if (values.size() != c.num_objects()) throw Error("presheaf: one value set per object required");
  if (restrictions.size() != c.num_morphisms()) {
    throw Error("presheaf: one restriction per morphism required");
  }
  for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
    if (restrictions[f].size() != values[c.cod(f)].size()) {
      throw Error("presheaf: restriction along " + c.morphism_id(f) + " has wrong size");
    }
    for (ElementIndex e : restrictions[f]) {
      if (e >= values[c.dom(f)].size()) {
        throw Error("presheaf: restriction along " + c.morphism_id(f) + " leaves its codomain");
      }
    }
  }

  // position[x][old] = new index after sorting ids
  std::vector<std::vector<std::size_t>> position(c.num_objects());
  bool reordered = false;
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    auto& ids = values[x];
    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (!std::is_sorted(ids.begin(), ids.end())) {
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
      reordered = true;
    }
    std::vector<std::string> sorted;
    sorted.reserve(ids.size());
    position[x].resize(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      position[x][order[i]] = i;
      sorted.push_back(std::move(ids[order[i]]));
    }
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] == sorted[i - 1]) {
        throw Error("presheaf: duplicate element " + sorted[i] + " at " + c.object_id(x));
      }
    }
    ids = std::move(sorted);
  }
  if (reordered) {
    for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
      const auto& old = restrictions[f];
      ElementMap remapped(old.size());
      for (std::size_t i = 0; i < old.size(); ++i) {
        remapped[position[c.cod(f)][i]] = position[c.dom(f)][old[i]];
      }
      restrictions[f] = std::move(remapped);
    }
  }

  SetPresheaf p;
  p.category_ = std::move(category);
  p.values_ = std::move(values);
  p.restrictions_ = std::move(restrictions);
  return p;
}

ElementIndex SetPresheaf::find(ObjectIndex x, std::string_view id) const {
  const auto& ids = values_[x];
  auto it = std::lower_bound(ids.begin(), ids.end(), id,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == ids.end() || *it != id) return kNone;
  return static_cast<ElementIndex>(it - ids.begin());
}

ElementIndex SetPresheaf::index_of(ObjectIndex x, std::string_view id) const {
  ElementIndex e = find(x, id);
  if (e == kNone) {
    throw Error("unknown element " + std::string(id) + " at " + category_->object_id(x));
  }
  return e;
}

std::size_t SetPresheaf::total_size() const {
  std::size_t n = 0;
  for (const auto& v : values_) n += v.size();
  return n;
}

bool SetPresheaf::operator==(const SetPresheaf& other) const {
  return same_category(*category_, *other.category_) && values_ == other.values_ &&
         restrictions_ == other.restrictions_;
}

PresheafBuilder& PresheafBuilder::value(std::string object, std::vector<std::string> elements) {
  values_[std::move(object)] = std::move(elements);
  return *this;
}

PresheafBuilder& PresheafBuilder::restrict(std::string morphism,
                                           std::vector<std::pair<std::string, std::string>> table) {
  restrictions_[std::move(morphism)] = std::move(table);
  return *this;
}

SetPresheaf PresheafBuilder::build() const {
  const FiniteCategory& c = *category_;
  std::vector<std::vector<std::string>> values(c.num_objects());
  for (const auto& [obj, elements] : values_) values[c.object_index(obj)] = elements;

  auto position = [&](ObjectIndex x, const std::string& id) {
    auto it = std::find(values[x].begin(), values[x].end(), id);
    if (it == values[x].end()) throw Error("unknown element " + id + " at " + c.object_id(x));
    return static_cast<ElementIndex>(it - values[x].begin());
  };

  std::vector<ElementMap> restrictions(c.num_morphisms());
  std::vector<bool> given(c.num_morphisms(), false);
  for (const auto& [mor, table] : restrictions_) {
    MorphismIndex f = c.morphism_index(mor);
    ElementMap map(values[c.cod(f)].size(), kNone);
    for (const auto& [from, to] : table) {
      ElementIndex i = position(c.cod(f), from);
      if (map[i] != kNone) throw Error("restriction along " + mor + " lists " + from + " twice");
      map[i] = position(c.dom(f), to);
    }
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] == kNone) {
        throw Error("restriction along " + mor + " misses element " + values[c.cod(f)][i]);
      }
    }
    restrictions[f] = std::move(map);
    given[f] = true;
  }
  for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
    if (given[f]) continue;
    if (!c.is_identity(f) && !values[c.cod(f)].empty()) {
      throw Error("missing restriction along " + c.morphism_id(f));
    }
    restrictions[f].resize(values[c.cod(f)].size());
    std::iota(restrictions[f].begin(), restrictions[f].end(), ElementIndex{0});
  }
  return SetPresheaf::make(category_, std::move(values), std::move(restrictions));
}

bool PresheafMorphism::operator==(const PresheafMorphism& other) const {
  return *source == *other.source && *target == *other.target && components == other.components;
}

bool same_category(const FiniteCategory& a, const FiniteCategory& b) {
  return &a == &b || a == b;
}

ValidationReport validate_presheaf(const SetPresheaf& p, const FiniteCategory& c) {
  if (!same_category(p.category(), c)) {
    return ValidationReport::fail("category", "presheaf declared over a different category");
  }
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    const auto& r = p.restriction(c.identity(x));
    for (ElementIndex e = 0; e < r.size(); ++e) {
      if (r[e] != e) {
        return ValidationReport::fail("identity", "restriction along " +
                                                      c.morphism_id(c.identity(x)) + " moves " +
                                                      p.element_id(x, e));
      }
    }
  }
  for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
    for (MorphismIndex g : c.morphisms_out_of(c.cod(f))) {
      MorphismIndex gf = c.compose(g, f);
      for (ElementIndex e = 0; e < p.size(c.cod(g)); ++e) {
        if (p.restrict(gf, e) != p.restrict(f, p.restrict(g, e))) {
          return ValidationReport::fail(
              "contravariance", "restrict(" + c.morphism_id(g) + "∘" + c.morphism_id(f) +
                                    ") differs from restrict(" + c.morphism_id(f) +
                                    ")∘restrict(" + c.morphism_id(g) + ") on element " +
                                    p.element_id(c.cod(g), e));
        }
      }
    }
  }
  return ValidationReport::pass();
}

ValidationReport validate_morphism(const PresheafMorphism& m) {
  const SetPresheaf& s = *m.source;
  const SetPresheaf& t = *m.target;
  const FiniteCategory& c = s.category();
  if (!same_category(c, t.category())) {
    return ValidationReport::fail("category", "source and target over different categories");
  }
  if (m.components.size() != c.num_objects()) {
    return ValidationReport::fail("shape", "one component per object required");
  }
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    if (m.components[x].size() != s.size(x)) {
      return ValidationReport::fail("shape", "component at " + c.object_id(x) + " has wrong size");
    }
    for (ElementIndex e : m.components[x]) {
      if (e >= t.size(x)) {
        return ValidationReport::fail("shape", "component at " + c.object_id(x) +
                                                   " leaves the target");
      }
    }
  }
  for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
    ObjectIndex v = c.dom(f);
    ObjectIndex x = c.cod(f);
    for (ElementIndex e = 0; e < s.size(x); ++e) {
      if (m.apply(v, s.restrict(f, e)) != t.restrict(f, m.apply(x, e))) {
        return ValidationReport::fail("naturality", "square for " + c.morphism_id(f) +
                                                        " fails on " + s.element_id(x, e));
      }
    }
  }
  return ValidationReport::pass();
}

SetPresheaf yoneda(const CategoryPtr& cp, ObjectIndex x) {
  const FiniteCategory& c = *cp;
  if (x >= c.num_objects()) throw Error("yoneda: unknown object");
  std::vector<std::vector<std::string>> values(c.num_objects());
  // position of a morphism inside its hom-list
  std::vector<std::size_t> position(c.num_morphisms(), kNone);
  for (ObjectIndex v = 0; v < c.num_objects(); ++v) {
    auto hom = c.hom(v, x);
    for (std::size_t i = 0; i < hom.size(); ++i) {
      values[v].push_back(c.morphism_id(hom[i]));
      position[hom[i]] = i;
    }
  }
  std::vector<ElementMap> restrictions(c.num_morphisms());
  for (MorphismIndex g = 0; g < c.num_morphisms(); ++g) {
    for (MorphismIndex f : c.hom(c.cod(g), x)) {
      restrictions[g].push_back(position[c.compose(f, g)]);
    }
  }
  return SetPresheaf::make(cp, std::move(values), std::move(restrictions));
}

SetPresheaf yoneda(const CategoryPtr& c, std::string_view x) {
  return yoneda(c, c->object_index(x));
}

namespace {

void require_same_category(const SetPresheaf& a, const SetPresheaf& b, const char* where) {
  if (!same_category(a.category(), b.category())) {
    throw Error(std::string(where) + ": presheaves over different categories");
  }
}

struct HomProblem {
  detail::FunctionalConstraints constraints;
  std::vector<std::size_t> offset;
};

HomProblem hom_problem(const SetPresheaf& u, const SetPresheaf& f) {
  const FiniteCategory& c = u.category();
  std::vector<std::size_t> offset(c.num_objects() + 1, 0);
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) offset[x + 1] = offset[x] + u.size(x);
  std::vector<std::size_t> domains(offset.back());
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    for (ElementIndex e = 0; e < u.size(x); ++e) domains[offset[x] + e] = f.size(x);
  }
  HomProblem problem{detail::FunctionalConstraints(std::move(domains)), std::move(offset)};
  for (MorphismIndex m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    ObjectIndex v = c.dom(m);
    ObjectIndex x = c.cod(m);
    for (ElementIndex e = 0; e < u.size(x); ++e) {
      problem.constraints.link(problem.offset[x] + e, problem.offset[v] + u.restrict(m, e),
                               &f.restriction(m));
    }
  }
  return problem;
}

}  // namespace

std::vector<PresheafMorphism> hom_presheaves(const PresheafPtr& u, const PresheafPtr& f) {
  require_same_category(*u, *f, "hom_presheaves");
  const FiniteCategory& c = u->category();
  HomProblem problem = hom_problem(*u, *f);
  std::vector<PresheafMorphism> out;
  problem.constraints.enumerate([&](const std::vector<std::size_t>& value) {
    PresheafMorphism m{u, f, std::vector<ElementMap>(c.num_objects())};
    for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
      m.components[x].assign(value.begin() + static_cast<std::ptrdiff_t>(problem.offset[x]),
                             value.begin() + static_cast<std::ptrdiff_t>(problem.offset[x + 1]));
    }
    out.push_back(std::move(m));
    return true;
  });
  return out;
}

std::size_t count_hom_presheaves(const SetPresheaf& u, const SetPresheaf& f) {
  require_same_category(u, f, "count_hom_presheaves");
  return hom_problem(u, f).constraints.count();
}

SetPresheaf empty_presheaf(const CategoryPtr& c) {
  return SetPresheaf::make(c, std::vector<std::vector<std::string>>(c->num_objects()),
                           std::vector<ElementMap>(c->num_morphisms()));
}

SetPresheaf constant_presheaf(const CategoryPtr& c, std::vector<std::string> elements) {
  ElementMap id(elements.size());
  std::iota(id.begin(), id.end(), ElementIndex{0});
  return SetPresheaf::make(c, std::vector<std::vector<std::string>>(c->num_objects(), elements),
                           std::vector<ElementMap>(c->num_morphisms(), id));
}

PresheafMorphism identity_morphism(const PresheafPtr& f) {
  PresheafMorphism m{f, f, {}};
  for (ObjectIndex x = 0; x < f->category().num_objects(); ++x) {
    ElementMap id(f->size(x));
    std::iota(id.begin(), id.end(), ElementIndex{0});
    m.components.push_back(std::move(id));
  }
  return m;
}

PresheafMorphism compose(const PresheafMorphism& second, const PresheafMorphism& first) {
  if (first.target != second.source && !(*first.target == *second.source)) throw Error("compose: morphisms are not composable");
  PresheafMorphism m{first.source, second.target, first.components};
  for (ObjectIndex x = 0; x < m.components.size(); ++x) {
    for (auto& e : m.components[x]) e = second.components[x][e];
  }
  return m;
}

ObjectIndex first_non_bijective(const PresheafMorphism& m) {
  for (ObjectIndex x = 0; x < m.components.size(); ++x) {
    if (m.source->size(x) != m.target->size(x)) return x;
    std::vector<bool> hit(m.target->size(x), false);
    for (ElementIndex e : m.components[x]) {
      if (hit[e]) return x;
      hit[e] = true;
    }
  }
  return kNone;
}

bool is_isomorphism(const PresheafMorphism& m) { return first_non_bijective(m) == kNone; }

ProductCone product(const PresheafPtr& f, const PresheafPtr& g) {
  require_same_category(*f, *g, "product");
  const FiniteCategory& c = f->category();
  std::vector<std::vector<std::string>> values(c.num_objects());
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    for (ElementIndex a = 0; a < f->size(x); ++a) {
      for (ElementIndex b = 0; b < g->size(x); ++b) {
        values[x].push_back("(" + f->element_id(x, a) + "," + g->element_id(x, b) + ")");
      }
    }
  }
  std::vector<ElementMap> restrictions(c.num_morphisms());
  for (MorphismIndex m = 0; m < c.num_morphisms(); ++m) {
    std::size_t gv = g->size(c.dom(m));
    for (ElementIndex a = 0; a < f->size(c.cod(m)); ++a) {
      for (ElementIndex b = 0; b < g->size(c.cod(m)); ++b) {
        restrictions[m].push_back(f->restrict(m, a) * gv + g->restrict(m, b));
      }
    }
  }
  // Remember the pair behind each position before ids are sorted.
  auto unsorted = values;
  PresheafPtr p =
      share(SetPresheaf::make(f->category_ptr(), std::move(values), std::move(restrictions)));
  ProductCone cone{p, {p, f, {}}, {p, g, {}}};
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    ElementMap first(p->size(x)), second(p->size(x));
    std::size_t gx = g->size(x);
    for (std::size_t i = 0; i < unsorted[x].size(); ++i) {
      ElementIndex at = p->index_of(x, unsorted[x][i]);
      first[at] = i / gx;
      second[at] = i % gx;
    }
    cone.first.components.push_back(std::move(first));
    cone.second.components.push_back(std::move(second));
  }
  return cone;
}

PresheafMorphism pair_morphism(const PresheafMorphism& first, const PresheafMorphism& second,
                               const ProductCone& cone) {
  const SetPresheaf& p = *cone.product;
  PresheafMorphism m{first.source, cone.product, {}};
  for (ObjectIndex x = 0; x < first.components.size(); ++x) {
    ElementMap comp;
    for (ElementIndex e = 0; e < first.source->size(x); ++e) {
      std::string id = "(" + first.target->element_id(x, first.apply(x, e)) + "," +
                       second.target->element_id(x, second.apply(x, e)) + ")";
      comp.push_back(p.index_of(x, id));
    }
    m.components.push_back(std::move(comp));
  }
  return m;
}

Subobject subpresheaf(const PresheafPtr& f, const std::vector<std::vector<bool>>& keep) {
  const FiniteCategory& c = f->category();
  std::vector<std::vector<std::string>> values(c.num_objects());
  std::vector<std::vector<std::size_t>> new_index(c.num_objects());
  std::vector<ElementMap> inclusion(c.num_objects());
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    new_index[x].assign(f->size(x), kNone);
    for (ElementIndex e = 0; e < f->size(x); ++e) {
      if (!keep[x][e]) continue;
      new_index[x][e] = values[x].size();
      values[x].push_back(f->element_id(x, e));
      inclusion[x].push_back(e);
    }
  }
  std::vector<ElementMap> restrictions(c.num_morphisms());
  for (MorphismIndex m = 0; m < c.num_morphisms(); ++m) {
    for (ElementIndex e : inclusion[c.cod(m)]) {
      ElementIndex r = new_index[c.dom(m)][f->restrict(m, e)];
      if (r == kNone) throw Error("subpresheaf: selection not closed under restriction");
      restrictions[m].push_back(r);
    }
  }
  PresheafPtr sub =
      share(SetPresheaf::make(f->category_ptr(), std::move(values), std::move(restrictions)));
  return {sub, PresheafMorphism{sub, f, std::move(inclusion)}};
}

Subobject equalizer(const PresheafMorphism& u, const PresheafMorphism& v) {
  if ((u.source != v.source && !(*u.source == *v.source)) ||
      (u.target != v.target && !(*u.target == *v.target))) {
    throw Error("equalizer: morphisms are not parallel");
  }
  std::vector<std::vector<bool>> keep(u.components.size());
  for (ObjectIndex x = 0; x < u.components.size(); ++x) {
    for (ElementIndex e = 0; e < u.components[x].size(); ++e) {
      keep[x].push_back(u.components[x][e] == v.components[x][e]);
    }
  }
  return subpresheaf(u.source, keep);
}

}  // namespace sitekit
