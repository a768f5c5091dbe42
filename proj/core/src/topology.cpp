#include "sitekit/topology.hpp"

#include <algorithm>
#include <set>

namespace sitekit {

bool GrothendieckTopology::is_covering(const Sieve& s) const {
  const auto& list = covers.at(s.root());
  return std::binary_search(list.begin(), list.end(), s);
}

Sieve GrothendieckTopology::minimal_cover(ObjectIndex x) const {
  const auto& list = covers.at(x);
  if (list.empty()) throw Error("no covering sieve on " + base->object_id(x));
  Sieve m = list.front();
  for (const auto& s : list) m = intersect(m, s);
  return m;
}

GrothendieckTopology make_topology(CategoryPtr base, std::vector<std::vector<Sieve>> covers) {
  covers.resize(base->num_objects());
  for (auto& list : covers) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return {std::move(base), std::move(covers)};
}

GrothendieckTopology trivial_topology(const CategoryPtr& base) {
  std::vector<std::vector<Sieve>> covers(base->num_objects());
  for (ObjectIndex x = 0; x < base->num_objects(); ++x) {
    covers[x].push_back(maximal_sieve(*base, x));
  }
  return make_topology(base, std::move(covers));
}

ValidationReport validate_topology(const GrothendieckTopology& t) {
  const FiniteCategory& c = *t.base;
  if (t.covers.size() != c.num_objects()) {
    return ValidationReport::fail("shape", "one cover family per object required");
  }
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    for (const Sieve& s : t.covers[x]) {
      if (s.root() != x) {
        return ValidationReport::fail("shape", "sieve listed under " + c.object_id(x) +
                                                   " has another root");
      }
      if (auto r = validate_sieve(c, s); !r) return r;
    }
  }
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    if (!t.is_covering(maximal_sieve(c, x))) {
      return ValidationReport::fail("maximality", "maximal sieve on " + c.object_id(x) +
                                                      " is not covering");
    }
  }
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    for (const Sieve& s : t.covers[x]) {
      for (MorphismIndex h : c.morphisms_into(x)) {
        Sieve back = pullback_sieve(c, h, s);
        if (!t.is_covering(back)) {
          return ValidationReport::fail(
              "stability", "pullback of " + format_sieve(c, s) + " on " + c.object_id(x) +
                               " along " + c.morphism_id(h) + " is " + format_sieve(c, back) +
                               ", not covering " + c.object_id(c.dom(h)));
        }
      }
    }
  }
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    for (const Sieve& candidate : all_sieves(c, x)) {
      if (t.is_covering(candidate)) continue;
      for (const Sieve& s : t.covers[x]) {
        bool locally_covering = true;
        for (MorphismIndex f : s.members()) {
          if (!t.is_covering(pullback_sieve(c, f, candidate))) {
            locally_covering = false;
            break;
          }
        }
        if (locally_covering) {
          return ValidationReport::fail(
              "local character", format_sieve(c, candidate) + " on " + c.object_id(x) +
                                     " is locally covering over " + format_sieve(c, s) +
                                     " but not covering");
        }
      }
    }
  }
  return ValidationReport::pass();
}

GrothendieckTopology saturate_topology(const CategoryPtr& base, const GeneratingCovers& families) {
  const FiniteCategory& c = *base;
  std::vector<std::vector<Sieve>> sieves(c.num_objects());
  for (ObjectIndex x = 0; x < families.size() && x < c.num_objects(); ++x) {
    for (const auto& family : families[x]) sieves[x].push_back(generate_sieve(c, x, family));
  }
  if (families.size() > c.num_objects()) throw Error("generating covers for unknown objects");
  return saturate_topology(base, sieves);
}

GrothendieckTopology saturate_topology(const CategoryPtr& base,
                                       const std::vector<std::vector<Sieve>>& sieves) {
  const FiniteCategory& c = *base;
  const std::size_t n = c.num_objects();
  std::vector<std::set<Sieve>> covers(n);
  for (ObjectIndex x = 0; x < sieves.size(); ++x) {
    for (const Sieve& s : sieves[x]) {
      if (s.root() != x) throw Error("generating sieve listed under the wrong object");
      if (auto r = validate_sieve(c, s); !r) throw Error("generating sieve: " + r.violation);
      covers[x].insert(s);
    }
  }
  std::vector<std::vector<Sieve>> lattice(n);
  for (ObjectIndex x = 0; x < n; ++x) lattice[x] = all_sieves(c, x);

  auto covering = [&](const Sieve& s) { return covers[s.root()].count(s) > 0; };

  bool changed = true;
  while (changed) {
    changed = false;
    for (ObjectIndex x = 0; x < n; ++x) {
      changed |= covers[x].insert(maximal_sieve(c, x)).second;
    }
    for (ObjectIndex x = 0; x < n; ++x) {
      std::vector<Sieve> current(covers[x].begin(), covers[x].end());
      for (const Sieve& s : current) {
        for (MorphismIndex h : c.morphisms_into(x)) {
          changed |= covers[c.dom(h)].insert(pullback_sieve(c, h, s)).second;
        }
      }
    }
    for (ObjectIndex x = 0; x < n; ++x) {
      for (const Sieve& candidate : lattice[x]) {
        if (covering(candidate)) continue;
        for (const Sieve& s : covers[x]) {
          bool locally_covering = true;
          for (MorphismIndex f : s.members()) {
            if (!covering(pullback_sieve(c, f, candidate))) {
              locally_covering = false;
              break;
            }
          }
          if (locally_covering) {
            covers[x].insert(candidate);
            changed = true;
            break;
          }
        }
      }
    }
  }
  std::vector<std::vector<Sieve>> out(n);
  for (ObjectIndex x = 0; x < n; ++x) out[x].assign(covers[x].begin(), covers[x].end());
  return make_topology(base, std::move(out));
}

bool is_coarser_or_equal(const GrothendieckTopology& a, const GrothendieckTopology& b) {
  for (ObjectIndex x = 0; x < a.covers.size(); ++x) {
    for (const Sieve& s : a.covers[x]) {
      if (!b.is_covering(s)) return false;
    }
  }
  return true;
}

}  // namespace sitekit
