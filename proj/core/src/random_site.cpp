#include "sitekit/random_site.hpp"

#include "sitekit/detail/rng.hpp"

namespace sitekit {

namespace {

using detail::Rng;
using detail::uniform;

struct Layout {
  std::size_t objects = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;  // (dom, cod), identities excluded
};

/// Composition of non-identity arrows, identities encoded as kIdentity + object.
class CompositionSearch {
public:
  static constexpr std::size_t kIdentity = 1000;

  explicit CompositionSearch(const Layout& l) : l_(l), n_(l.arrows.size()), table_(n_ * n_, kNone) {
    for (std::size_t g = 0; g < n_; ++g) {
      for (std::size_t f = 0; f < n_; ++f) {
        if (l.arrows[f].second == l.arrows[g].first) pairs_.push_back({g, f});
      }
    }
  }

  bool solve(Rng& rng, std::size_t budget) {
    budget_ = budget;
    return step(0, rng);
  }

  std::size_t at(std::size_t g, std::size_t f) const { return table_[g * n_ + f]; }

  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

private:
  // composite of two codes, kNone if an entry is still open
  std::size_t comp(std::size_t g, std::size_t f) const {
    if (g >= kIdentity) return f;
    if (f >= kIdentity) return g;
    return table_[g * n_ + f];
  }

  bool associative() const {
    for (const auto& [g, f] : pairs_) {
      std::size_t gf = table_[g * n_ + f];
      if (gf == kNone) continue;
      for (std::size_t h = 0; h < n_; ++h) {
        if (l_.arrows[h].first != l_.arrows[g].second) continue;
        std::size_t hg = table_[h * n_ + g];
        if (hg == kNone) continue;
        std::size_t left = comp(hg, f), right = comp(h, gf);
        if (left != kNone && right != kNone && left != right) return false;
      }
    }
    return true;
  }

  bool step(std::size_t i, Rng& rng) {
    if (i == pairs_.size()) return true;
    if (budget_ == 0) return false;
    --budget_;
    auto [g, f] = pairs_[i];
    std::size_t dom = l_.arrows[f].first, cod = l_.arrows[g].second;
    std::vector<std::size_t> options;
    if (dom == cod) options.push_back(kIdentity + dom);
    for (std::size_t h = 0; h < n_; ++h) {
      if (l_.arrows[h] == std::make_pair(dom, cod)) options.push_back(h);
    }
    detail::shuffle(options, rng);
    for (std::size_t h : options) {
      table_[g * n_ + f] = h;
      if (associative() && step(i + 1, rng)) return true;
      if (budget_ == 0) break;
    }
    table_[g * n_ + f] = kNone;
    return false;
  }

  const Layout& l_;
  std::size_t n_;
  std::vector<std::size_t> table_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::size_t budget_ = 0;
};

std::string object_name(std::size_t i) { return "o" + std::to_string(i); }
std::string arrow_name(std::size_t i) { return "m" + std::to_string(i); }

SiteDocument random_category(Rng& rng, const RandomSiteLimits& limits) {
  for (;;) {
    Layout l;
    l.objects = 1 + uniform(rng, limits.max_objects);
    std::size_t k = uniform(rng, limits.max_morphisms + 1);
    for (std::size_t i = 0; i < k; ++i) {
      l.arrows.push_back({uniform(rng, l.objects), uniform(rng, l.objects)});
    }
    CompositionSearch search(l);
    if (!search.solve(rng, 20000)) continue;

    SiteDocument doc;
    for (std::size_t x = 0; x < l.objects; ++x) doc.objects.push_back(object_name(x));
    for (std::size_t i = 0; i < k; ++i) {
      doc.morphisms.push_back(
          {arrow_name(i), object_name(l.arrows[i].first), object_name(l.arrows[i].second)});
    }
    for (const auto& [g, f] : search.pairs()) {
      std::size_t h = search.at(g, f);
      std::string name = h >= CompositionSearch::kIdentity
                             ? "id_" + object_name(h - CompositionSearch::kIdentity)
                             : arrow_name(h);
      doc.compose.push_back({arrow_name(g), arrow_name(f), std::move(name)});
    }
    return doc;
  }
}

}  // namespace

std::uint64_t random_site_seed(std::uint64_t seed, std::size_t i) {
  return detail::derive_seed(seed, i);
}

SiteDocument random_site(std::uint64_t seed, const RandomSiteLimits& limits) {
  Rng rng(seed);
  SiteDocument doc = random_category(rng, limits);
  doc.name = "random:" + std::to_string(seed);
  Site plain = load_site(doc);
  const FiniteCategory& c = *plain.base();

  std::vector<std::pair<MorphismIndex, MorphismIndex>> parallel;
  for (MorphismIndex a = 0; a < c.num_morphisms(); ++a) {
    for (MorphismIndex b = a + 1; b < c.num_morphisms(); ++b) {
      if (c.dom(a) == c.dom(b) && c.cod(a) == c.cod(b)) parallel.push_back({a, b});
    }
  }
  std::size_t want = std::min(uniform(rng, limits.max_edges + 1), parallel.size());
  for (; want > 0; --want) {
    bool accepted = false;
    for (int attempt = 0; attempt < 32 && !accepted; ++attempt) {
      std::vector<std::pair<MorphismIndex, MorphismIndex>> pool = parallel;
      detail::shuffle(pool, rng);
      EnrichedCategory e{plain.base(), {}};
      for (std::size_t i = 0; i < want; ++i) e.edges.push_back({pool[i].first, pool[i].second});
      if (validate_enrichment(e)) {
        for (const HomotopyEdge& edge : e.edges) {
          doc.edges.emplace_back(c.morphism_id(edge.first), c.morphism_id(edge.second));
        }
        accepted = true;
      }
    }
    if (accepted) break;
  }

  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    std::size_t families = uniform(rng, limits.max_families + 1);
    for (std::size_t i = 0; i < families; ++i) {
      std::vector<std::string> family;
      for (MorphismIndex f : c.morphisms_into(x)) {
        if (detail::coin(rng, c.is_identity(f) ? 10 : 50)) family.push_back(c.morphism_id(f));
      }
      doc.topology[c.object_id(x)].push_back(std::move(family));
    }
  }
  return doc;
}

}  // namespace sitekit
