#include "sitekit/sheaf.hpp"

#include <algorithm>
#include <set>

#include "sitekit/detail/functional_constraints.hpp"

namespace sitekit {

namespace {

/// Variables are the sieve members; choosing a section over f forces f∘g.
detail::FunctionalConstraints family_problem(const SetPresheaf& f,
                                             const std::vector<MorphismIndex>& members) {
  const FiniteCategory& c = f.category();
  std::vector<std::size_t> position(c.num_morphisms(), kNone);
  std::vector<std::size_t> domains;
  for (std::size_t i = 0; i < members.size(); ++i) {
    position[members[i]] = i;
    domains.push_back(f.size(c.dom(members[i])));
  }
  detail::FunctionalConstraints problem(std::move(domains));
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (MorphismIndex g : c.morphisms_into(c.dom(members[i]))) {
      if (c.is_identity(g)) continue;
      std::size_t j = position[c.compose(members[i], g)];
      if (j == kNone) throw Error("matching families: input is not a sieve");
      problem.link(i, j, &f.restriction(g));
    }
  }
  return problem;
}

void require_base(const SetPresheaf& f, const GrothendieckTopology& t, const char* where) {
  if (!same_category(f.category(), *t.base)) {
    throw Error(std::string(where) + ": presheaf and topology over different categories");
  }
}

}  // namespace

std::vector<MatchingFamily> matching_families(const SetPresheaf& f, const Sieve& s) {
  if (s.mask().size() != f.category().num_morphisms()) {
    throw Error("matching_families: sieve over a different category");
  }
  auto members = s.members();
  std::vector<MatchingFamily> out;
  family_problem(f, members).enumerate([&](const std::vector<std::size_t>& v) {
    out.push_back({s, v});
    return true;
  });
  return out;
}

std::size_t count_matching_families(const SetPresheaf& f, const Sieve& s) {
  return family_problem(f, s.members()).count();
}

std::vector<ElementIndex> restrict_to_sieve(const SetPresheaf& f, const Sieve& s, ElementIndex x) {
  std::vector<ElementIndex> out;
  for (MorphismIndex g : s.members()) out.push_back(f.restrict(g, x));
  return out;
}

const char* to_string(SheafKind k) {
  switch (k) {
    case SheafKind::sheaf:
      return "sheaf";
    case SheafKind::separated:
      return "separated-not-sheaf";
    case SheafKind::not_separated:
      return "not-separated";
  }
  return "?";
}

Classification classify_presheaf(const SetPresheaf& f, const GrothendieckTopology& t) {
  require_base(f, t, "classify_presheaf");
  const FiniteCategory& c = f.category();
  Classification out;
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    for (const Sieve& s : t.covers[x]) {
      std::set<std::vector<ElementIndex>> images;
      for (ElementIndex e = 0; e < f.size(x); ++e) images.insert(restrict_to_sieve(f, s, e));
      bool injective = images.size() == f.size(x);
      std::size_t families = injective ? count_matching_families(f, s) : 0;
      if (!injective) {
        return {SheafKind::not_separated, x, s, f.size(x), count_matching_families(f, s)};
      }
      if (families != f.size(x) && out.kind == SheafKind::sheaf) {
        out = {SheafKind::separated, x, s, f.size(x), families};
      }
    }
  }
  return out;
}

namespace {

std::string family_id(const SetPresheaf& f, const std::vector<MorphismIndex>& members,
                      const std::vector<ElementIndex>& family) {
  const FiniteCategory& c = f.category();
  std::vector<std::pair<const std::string*, const std::string*>> parts;
  for (std::size_t i = 0; i < members.size(); ++i) {
    parts.emplace_back(&c.morphism_id(members[i]), &f.element_id(c.dom(members[i]), family[i]));
  }
  std::sort(parts.begin(), parts.end(), [](auto a, auto b) { return *a.first < *b.first; });
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += *parts[i].first;
    out += ':';
    out += *parts[i].second;
  }
  return out + "}";
}

}  // namespace

PlusConstruction plus_construction(const PresheafPtr& fp, const GrothendieckTopology& t) {
  const SetPresheaf& f = *fp;
  require_base(f, t, "plus_construction");
  const FiniteCategory& c = f.category();
  const std::size_t n = c.num_objects();

  PlusConstruction out;
  out.families.resize(n);
  out.lookup.resize(n);
  std::vector<std::vector<MorphismIndex>> members(n);
  std::vector<std::vector<std::size_t>> position(n);
  std::vector<std::vector<std::string>> values(n);

  for (ObjectIndex x = 0; x < n; ++x) {
    out.minimal.push_back(t.minimal_cover(x));
    members[x] = out.minimal[x].members();
    position[x].assign(c.num_morphisms(), kNone);
    for (std::size_t i = 0; i < members[x].size(); ++i) position[x][members[x][i]] = i;

    std::vector<std::pair<std::string, std::vector<ElementIndex>>> found;
    family_problem(f, members[x]).enumerate([&](const std::vector<std::size_t>& v) {
      found.emplace_back(family_id(f, members[x], v), v);
      return true;
    });
    std::sort(found.begin(), found.end());
    for (auto& [id, fam] : found) {
      out.lookup[x].emplace(fam, values[x].size());
      values[x].push_back(std::move(id));
      out.families[x].push_back(std::move(fam));
    }
  }

  std::vector<ElementMap> restrictions(c.num_morphisms());
  for (MorphismIndex h = 0; h < c.num_morphisms(); ++h) {
    ObjectIndex y = c.dom(h);
    ObjectIndex x = c.cod(h);
    for (const auto& fam : out.families[x]) {
      std::vector<ElementIndex> pulled;
      pulled.reserve(members[y].size());
      for (MorphismIndex g : members[y]) {
        std::size_t i = position[x][c.compose(h, g)];
        if (i == kNone) throw Error("plus_construction: topology is not pullback-stable");
        pulled.push_back(fam[i]);
      }
      restrictions[h].push_back(out.lookup[y].at(pulled));
    }
  }
  out.result = share(SetPresheaf::make(f.category_ptr(), std::move(values), std::move(restrictions)));

  out.unit = {fp, out.result, std::vector<ElementMap>(n)};
  for (ObjectIndex x = 0; x < n; ++x) {
    for (ElementIndex e = 0; e < f.size(x); ++e) {
      out.unit.components[x].push_back(out.lookup[x].at(restrict_to_sieve(f, out.minimal[x], e)));
    }
  }
  return out;
}

PresheafMorphism plus_morphism(const PresheafMorphism& m, const PlusConstruction& source,
                               const PlusConstruction& target) {
  const FiniteCategory& c = m.source->category();
  PresheafMorphism out{source.result, target.result, std::vector<ElementMap>(c.num_objects())};
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    auto members = source.minimal[x].members();
    for (const auto& fam : source.families[x]) {
      std::vector<ElementIndex> image(fam.size());
      for (std::size_t i = 0; i < fam.size(); ++i) {
        image[i] = m.apply(c.dom(members[i]), fam[i]);
      }
      out.components[x].push_back(target.lookup[x].at(image));
    }
  }
  return out;
}

SheafificationResult sheafify(const PresheafPtr& f, const GrothendieckTopology& t) {
  SheafificationResult out;
  out.first = plus_construction(f, t);
  out.second = plus_construction(out.first.result, t);
  out.sheaf = out.second.result;
  out.unit = compose(out.second.unit, out.first.unit);
  return out;
}

PresheafMorphism sheafify_morphism(const PresheafMorphism& m, const SheafificationResult& source,
                                   const SheafificationResult& target) {
  PresheafMorphism once = plus_morphism(m, source.first, target.first);
  return plus_morphism(once, source.second, target.second);
}

IsoVerdict is_tau_iso(const PresheafMorphism& m, const SheafificationResult& source,
                      const SheafificationResult& target) {
  ObjectIndex bad = first_non_bijective(sheafify_morphism(m, source, target));
  return {bad == kNone, bad};
}

IsoVerdict is_tau_iso(const PresheafMorphism& m, const GrothendieckTopology& t) {
  return is_tau_iso(m, sheafify(m.source, t), sheafify(m.target, t));
}

}  // namespace sitekit
