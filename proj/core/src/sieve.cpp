#include "sitekit/sieve.hpp"

#include <algorithm>
#include <set>

namespace sitekit {

std::size_t Sieve::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<MorphismIndex> Sieve::members() const {
  std::vector<MorphismIndex> out;
  for (MorphismIndex f = 0; f < mask_.size(); ++f) {
    if (mask_[f]) out.push_back(f);
  }
  return out;
}

bool Sieve::subset_of(const Sieve& other) const {
  if (root_ != other.root_) return false;
  for (std::size_t f = 0; f < mask_.size(); ++f) {
    if (mask_[f] && !other.mask_[f]) return false;
  }
  return true;
}

Sieve generate_sieve(const FiniteCategory& c, ObjectIndex x,
                     std::span<const MorphismIndex> generators) {
  std::vector<bool> mask(c.num_morphisms(), false);
  for (MorphismIndex f : generators) {
    if (c.cod(f) != x) {
      throw Error("generator " + c.morphism_id(f) + " does not have codomain " + c.object_id(x));
    }
    for (MorphismIndex g : c.morphisms_into(c.dom(f))) mask[c.compose(f, g)] = true;
  }
  return Sieve(x, std::move(mask));
}

Sieve maximal_sieve(const FiniteCategory& c, ObjectIndex x) {
  std::vector<bool> mask(c.num_morphisms(), false);
  for (MorphismIndex f : c.morphisms_into(x)) mask[f] = true;
  return Sieve(x, std::move(mask));
}

Sieve empty_sieve(const FiniteCategory& c, ObjectIndex x) {
  return Sieve(x, std::vector<bool>(c.num_morphisms(), false));
}

Sieve pullback_sieve(const FiniteCategory& c, MorphismIndex h, const Sieve& s) {
  if (c.cod(h) != s.root()) {
    throw Error("pullback_sieve: " + c.morphism_id(h) + " does not land in " +
                c.object_id(s.root()));
  }
  std::vector<bool> mask(c.num_morphisms(), false);
  for (MorphismIndex g : c.morphisms_into(c.dom(h))) {
    if (s.contains(c.compose(h, g))) mask[g] = true;
  }
  return Sieve(c.dom(h), std::move(mask));
}

Sieve intersect(const Sieve& a, const Sieve& b) {
  if (a.root() != b.root()) throw Error("intersect: sieves on different objects");
  std::vector<bool> mask(a.mask().size());
  for (std::size_t f = 0; f < mask.size(); ++f) mask[f] = a.contains(f) && b.contains(f);
  return Sieve(a.root(), std::move(mask));
}

bool is_maximal(const FiniteCategory& c, const Sieve& s) {
  return s.contains(c.identity(s.root()));
}

ValidationReport validate_sieve(const FiniteCategory& c, const Sieve& s) {
  if (s.mask().size() != c.num_morphisms() || s.root() >= c.num_objects()) {
    return ValidationReport::fail("shape", "sieve does not match the category");
  }
  for (MorphismIndex f : s.members()) {
    if (c.cod(f) != s.root()) {
      return ValidationReport::fail("root", c.morphism_id(f) + " does not land in " +
                                                c.object_id(s.root()));
    }
    for (MorphismIndex g : c.morphisms_into(c.dom(f))) {
      if (!s.contains(c.compose(f, g))) {
        return ValidationReport::fail("closure", c.morphism_id(f) + "∘" + c.morphism_id(g) +
                                                     " missing from sieve on " +
                                                     c.object_id(s.root()));
      }
    }
  }
  return ValidationReport::pass();
}

std::vector<Sieve> all_sieves(const FiniteCategory& c, ObjectIndex x) {
  std::set<Sieve> seen;
  std::vector<Sieve> frontier{empty_sieve(c, x)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    Sieve s = std::move(frontier.back());
    frontier.pop_back();
    for (MorphismIndex f : c.morphisms_into(x)) {
      if (s.contains(f)) continue;
      // s ∪ <f> is again a sieve
      auto mask = s.mask();
      for (MorphismIndex g : c.morphisms_into(c.dom(f))) mask[c.compose(f, g)] = true;
      Sieve grown(x, std::move(mask));
      if (seen.insert(grown).second) frontier.push_back(std::move(grown));
    }
  }
  return {seen.begin(), seen.end()};
}

Subobject sieve_presheaf(const CategoryPtr& c, const Sieve& s) {
  PresheafPtr y = share(yoneda(c, s.root()));
  std::vector<std::vector<bool>> keep(c->num_objects());
  for (ObjectIndex v = 0; v < c->num_objects(); ++v) {
    for (ElementIndex e = 0; e < y->size(v); ++e) {
      keep[v].push_back(s.contains(c->morphism_index(y->element_id(v, e))));
    }
  }
  return subpresheaf(y, keep);
}

std::string format_sieve(const FiniteCategory& c, const Sieve& s) {
  std::vector<std::string> ids;
  for (MorphismIndex f : s.members()) ids.push_back(c.morphism_id(f));
  std::sort(ids.begin(), ids.end());
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  return out + "}";
}

std::string describe_sieve(const FiniteCategory& c, const Sieve& s) {
  return is_maximal(c, s) ? "maximal" : format_sieve(c, s);
}

Sieve parse_sieve(const FiniteCategory& c, const std::string& text) {
  auto at = text.rfind('@');
  if (at == std::string::npos) throw Error("sieve must be written as gen1,gen2@object: " + text);
  ObjectIndex x = c.object_index(text.substr(at + 1));
  std::vector<MorphismIndex> gens;
  std::string list = text.substr(0, at);
  std::size_t start = 0;
  while (start < list.size()) {
    auto comma = list.find(',', start);
    if (comma == std::string::npos) comma = list.size();
    std::string id = list.substr(start, comma - start);
    id.erase(0, id.find_first_not_of(' '));
    id.erase(id.find_last_not_of(' ') + 1);
    if (!id.empty()) gens.push_back(c.morphism_index(id));
    start = comma + 1;
  }
  return generate_sieve(c, x, gens);
}

}  // namespace sitekit
