#include "sitekit/enumerate.hpp"

#include <functional>
#include <set>

#include "sitekit/detail/rng.hpp"

namespace sitekit {

namespace {

struct Triple {
  MorphismIndex g, f, h;  // h = g∘f, g and f not identities
};

/// Restriction tables for fixed value sizes, filled one entry at a time with
/// the contravariance constraints checked on every partial assignment.
class TableSearch {
public:
  TableSearch(const FiniteCategory& c, std::vector<std::size_t> sizes)
      : c_(c), sizes_(std::move(sizes)), tables_(c.num_morphisms()) {
    for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
      tables_[f].assign(sizes_[c.cod(f)], kNone);
      if (c.is_identity(f)) {
        for (std::size_t e = 0; e < tables_[f].size(); ++e) tables_[f][e] = e;
        continue;
      }
      for (std::size_t e = 0; e < tables_[f].size(); ++e) vars_.push_back({f, e});
    }
    for (MorphismIndex g = 0; g < c.num_morphisms(); ++g) {
      if (c.is_identity(g)) continue;
      for (MorphismIndex f : c.morphisms_into(c.dom(g))) {
        if (!c.is_identity(f)) triples_.push_back({g, f, c.compose(g, f)});
      }
    }
  }

  /// Calls visit on each complete assignment until it returns false. With an
  /// rng the value order is shuffled at every node. Returns false if stopped
  /// early or the node budget ran out.
  bool search(const std::function<bool(const std::vector<ElementMap>&)>& visit,
              detail::Rng* rng, std::size_t budget) {
    budget_ = budget;
    return step(0, visit, rng);
  }

  bool budget_exhausted() const { return exhausted_; }

private:
  struct Var {
    MorphismIndex f;
    std::size_t e;
  };

  bool consistent() const {
    for (const Triple& t : triples_) {
      for (std::size_t e = 0; e < tables_[t.g].size(); ++e) {
        std::size_t a = tables_[t.g][e];
        if (a == kNone) continue;
        std::size_t b = tables_[t.f][a];
        std::size_t c = tables_[t.h][e];
        if (b != kNone && c != kNone && b != c) return false;
      }
    }
    return true;
  }

  bool step(std::size_t i, const std::function<bool(const std::vector<ElementMap>&)>& visit,
            detail::Rng* rng) {
    if (i == vars_.size()) return visit(tables_);
    if (budget_ == 0) {
      exhausted_ = true;
      return false;
    }
    --budget_;
    const Var& v = vars_[i];
    std::vector<std::size_t> order(sizes_[c_.dom(v.f)]);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    if (rng) detail::shuffle(order, *rng);
    for (std::size_t value : order) {
      tables_[v.f][v.e] = value;
      if (consistent() && !step(i + 1, visit, rng)) {
        tables_[v.f][v.e] = kNone;
        return false;
      }
    }
    tables_[v.f][v.e] = kNone;
    return true;
  }

  const FiniteCategory& c_;
  std::vector<std::size_t> sizes_;
  std::vector<ElementMap> tables_;
  std::vector<Var> vars_;
  std::vector<Triple> triples_;
  std::size_t budget_ = 0;
  bool exhausted_ = false;
};

PresheafPtr assemble(const CategoryPtr& c, const std::vector<std::size_t>& sizes,
                     const std::vector<ElementMap>& tables) {
  std::vector<std::vector<std::string>> values(sizes.size());
  for (ObjectIndex x = 0; x < sizes.size(); ++x) {
    for (std::size_t e = 0; e < sizes[x]; ++e) values[x].push_back(element_name(e));
  }
  return share(SetPresheaf::make(c, std::move(values), tables));
}

constexpr std::size_t kUnbounded = static_cast<std::size_t>(-1);

}  // namespace

std::string element_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "e" + std::to_string(i);
}

std::vector<PresheafPtr> enumerate_presheaves(const CategoryPtr& c, std::size_t bound,
                                              std::size_t limit, bool* truncated) {
  std::vector<PresheafPtr> out;
  bool cut = false;
  std::vector<std::size_t> sizes(c->num_objects(), 0);
  while (!cut) {
    TableSearch search(*c, sizes);
    search.search(
        [&](const std::vector<ElementMap>& tables) {
          if (out.size() == limit) {
            cut = true;
            return false;
          }
          out.push_back(assemble(c, sizes, tables));
          return true;
        },
        nullptr, kUnbounded);
    // next size vector, last object fastest
    std::size_t k = sizes.size();
    while (k > 0 && sizes[k - 1] == bound) sizes[--k] = 0;
    if (k == 0) break;
    ++sizes[k - 1];
  }
  if (truncated) *truncated = cut;
  return out;
}

PresheafPtr random_presheaf(const CategoryPtr& c, std::size_t bound, std::uint64_t seed) {
  detail::Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::size_t> sizes(c->num_objects());
    for (std::size_t& s : sizes) s = detail::uniform(rng, bound + 1);
    TableSearch search(*c, sizes);
    PresheafPtr found;
    search.search(
        [&](const std::vector<ElementMap>& tables) {
          found = assemble(c, sizes, tables);
          return false;
        },
        &rng, 4096);
    if (found) return found;
  }
  return nullptr;
}

PresheafSample sample_presheaves(const CategoryPtr& c, std::size_t bound, std::size_t limit,
                                 std::uint64_t seed) {
  PresheafSample out;
  bool truncated = false;
  out.presheaves = enumerate_presheaves(c, bound, limit, &truncated);
  if (!truncated) {
    out.exhaustive = true;
    return out;
  }
  out.presheaves.clear();
  std::set<std::pair<std::vector<std::vector<std::string>>, std::vector<ElementMap>>> seen;
  for (std::uint64_t draw = 0; out.presheaves.size() < limit && draw < 20 * limit; ++draw) {
    PresheafPtr p = random_presheaf(c, bound, detail::derive_seed(seed, draw));
    if (!p) continue;
    std::pair<std::vector<std::vector<std::string>>, std::vector<ElementMap>> key;
    for (ObjectIndex x = 0; x < c->num_objects(); ++x) key.first.push_back(p->value(x));
    for (MorphismIndex f = 0; f < c->num_morphisms(); ++f) key.second.push_back(p->restriction(f));
    if (seen.insert(std::move(key)).second) out.presheaves.push_back(std::move(p));
  }
  return out;
}

}  // namespace sitekit
