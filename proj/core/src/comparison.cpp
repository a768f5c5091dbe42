#include "sitekit/comparison.hpp"

#include <algorithm>
#include <set>

#include "sitekit/detail/parallel.hpp"
#include "sitekit/detail/rng.hpp"
#include "sitekit/enumerate.hpp"

namespace sitekit {

namespace {

std::string describe_population(std::size_t n, bool exhaustive, const char* where) {
  return std::to_string(n) + " presheaves on " + where + (exhaustive ? " (exhaustive)" : " (sampled)");
}

/// Up to `k` of the indices [0, n), all of them when n <= k, otherwise a
/// sorted random choice.
std::vector<std::size_t> choose(std::size_t n, std::size_t k, detail::Rng& rng) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  if (n <= k) return all;
  detail::shuffle(all, rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<std::pair<std::size_t, std::size_t>> choose_pairs(std::size_t n, std::size_t k,
                                                              detail::Rng& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t idx : choose(n * n, k, rng)) out.push_back({idx / n, idx % n});
  return out;
}

void fail(CheckOutcome& o, std::string detail, Counterexample cx) {
  o.passed = false;
  o.detail = std::move(detail);
  cx.description = o.detail;
  o.counterexample = std::move(cx);
}

Counterexample single(const char* name, const PresheafPtr& f) {
  Counterexample cx;
  cx.presheaves.push_back({name, f});
  return cx;
}

std::string classification_text(const FiniteCategory& c, const Classification& k) {
  std::string out = to_string(k.kind);
  if (k.witness_object != kNone) {
    out += " at " + c.object_id(k.witness_object) + " over " + format_sieve(c, k.witness_sieve) +
           " (" + std::to_string(k.sections) + " sections vs " + std::to_string(k.families) +
           " families)";
  }
  return out;
}

/// m : A -> B as a map into the subobject `sub` of B, if it lands there.
std::optional<PresheafMorphism> factor_through(const PresheafMorphism& m, const Subobject& sub) {
  const FiniteCategory& c = m.source->category();
  PresheafMorphism out{m.source, sub.object, std::vector<ElementMap>(c.num_objects())};
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    const ElementMap& incl = sub.inclusion.components[x];
    for (ElementIndex e = 0; e < m.source->size(x); ++e) {
      auto it = std::find(incl.begin(), incl.end(), m.apply(x, e));
      if (it == incl.end()) return std::nullopt;
      out.components[x].push_back(static_cast<ElementIndex>(it - incl.begin()));
    }
  }
  return out;
}

}  // namespace

bool SiteCheck::passed() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const CheckOutcome& o) { return o.passed; });
}

std::optional<ConverseWitness> find_converse_failure(const HomotopyCategoryData& h,
                                                     const GrothendieckTopology& t,
                                                     const GrothendieckTopology& induced,
                                                     const std::vector<PresheafPtr>& population) {
  std::optional<ConverseWitness> fallback;
  for (const PresheafPtr& f : population) {
    if (!classify_presheaf(*f, induced).is_sheaf()) continue;
    Classification star = classify_presheaf(gamma_star(h, *f), t);
    if (star.is_sheaf()) continue;
    if (star.is_separated()) return ConverseWitness{f, star};
    if (!fallback) fallback = ConverseWitness{f, star};
  }
  return fallback;
}

SiteCheck check_site(const Site& site, const LemmaBounds& bounds, Fault fault) {
  const HomotopyCategoryData& h = site.ho;
  const GrothendieckTopology& t = site.topology;
  const FiniteCategory& ho = *h.ho;
  SiteCheck out{site.label(), site.digest, {}};
  detail::Rng rng(detail::derive_seed(bounds.seed, 0));

  // identification-topologies
  InducedTopologyReport report = compute_induced_topology(h, t);
  {
    CheckOutcome o;
    o.name = "identification-topologies";
    for (ObjectIndex x = 0; x < ho.num_objects(); ++x) o.cases += all_sieves(ho, x).size();
    if (!report.agreement) {
      const Sieve& w = *report.witness;
      bool bracket = std::binary_search(report.via_bracket[w.root()].begin(),
                                        report.via_bracket[w.root()].end(), w);
      Counterexample cx;
      cx.sieve = w;
      cx.sieve_in_ho = true;
      fail(o,
           format_sieve(ho, w) + " on " + ho.object_id(w.root()) +
               (bracket ? " is a bracket of a cover but fails the iso test"
                        : " passes the iso test but is no bracket of a cover"),
           cx);
    } else if (!report.validation) {
      fail(o, "induced covers violate " + report.validation.law + ": " + report.validation.violation,
           {});
    }
    out.outcomes.push_back(std::move(o));
  }
  GrothendieckTopology induced =
      fault == Fault::trivial_induced ? trivial_topology(h.ho) : report.induced;

  out.outcomes.push_back(check_cover_reflecting(h, t, induced));
  out.outcomes.push_back(check_thickening(h, t));

  PresheafSample ho_pop =
      sample_presheaves(h.ho, bounds.bound, bounds.max_presheaves, detail::derive_seed(bounds.seed, 1));
  PresheafSample base_pop = sample_presheaves(h.base, bounds.bound, bounds.max_presheaves,
                                              detail::derive_seed(bounds.seed, 2));
  const auto& fs = ho_pop.presheaves;
  std::vector<PresheafPtr> stars;
  std::vector<SheafificationResult> alpha_ho, alpha_star;
  std::vector<Classification> class_ho, class_star;
  for (const PresheafPtr& f : fs) {
    stars.push_back(share(gamma_star(h, *f)));
    alpha_ho.push_back(sheafify(f, induced));
    alpha_star.push_back(sheafify(stars.back(), t));
    class_ho.push_back(classify_presheaf(*f, induced));
    class_star.push_back(classify_presheaf(*stars.back(), t));
  }
  std::string ho_population = describe_population(fs.size(), ho_pop.exhaustive, "Ho(C)");

  // (a) compare-sheafifications
  {
    CheckOutcome o;
    o.name = "compare-sheafifications";
    for (auto [i, j] : choose_pairs(fs.size(), bounds.max_pairs, rng)) {
      std::vector<PresheafMorphism> homs = hom_presheaves(fs[i], fs[j]);
      for (std::size_t k : choose(homs.size(), bounds.max_morphisms_per_pair, rng)) {
        const PresheafMorphism& m = homs[k];
        ++o.cases;
        IsoVerdict left = is_tau_iso(m, alpha_ho[i], alpha_ho[j]);
        PresheafMorphism m_star = gamma_star(h, m, stars[i], stars[j]);
        IsoVerdict right = is_tau_iso(m_star, alpha_star[i], alpha_star[j]);
        if (left.iso != right.iso) {
          Counterexample cx;
          cx.presheaves = {{"F", fs[i]}, {"G", fs[j]}};
          cx.morphisms = {{"m", m}};
          ObjectIndex at = left.iso ? right.witness : left.witness;
          fail(o,
               std::string("m : F -> G is ") + (left.iso ? "" : "not ") +
                   "an iso after induced sheafification but gamma*m is " + (right.iso ? "" : "not ") +
                   "one after base sheafification (fails at " + ho.object_id(at) + ")",
               cx);
          break;
        }
      }
      if (!o.passed) break;
    }
    if (o.passed) o.detail = ho_population + ", " + std::to_string(o.cases) + " morphisms";
    out.outcomes.push_back(std::move(o));
  }

  // (b) reflecting-sheaf-condition: the three stated implications
  {
    CheckOutcome o;
    o.name = "reflecting-sheaf-condition";
    for (std::size_t i = 0; i < fs.size() && o.passed; ++i) {
      o.cases += 3;
      const char* broken = nullptr;
      if (class_star[i].is_sheaf() && !class_ho[i].is_sheaf()) {
        broken = "gamma*F is a base sheaf but F is not an induced sheaf";
      } else if (class_star[i].is_separated() && !class_ho[i].is_separated()) {
        broken = "gamma*F is base-separated but F is not induced-separated";
      } else if (class_ho[i].is_separated() && !class_star[i].is_separated()) {
        broken = "F is induced-separated but gamma*F is not base-separated";
      }
      if (broken) {
        fail(o,
             std::string(broken) + " (F: " + classification_text(ho, class_ho[i]) +
                 "; gamma*F: " + classification_text(*h.base, class_star[i]) + ")",
             single("F", fs[i]));
      }
    }
    if (o.passed) o.detail = ho_population;
    out.outcomes.push_back(std::move(o));
  }

  // (c) converse-failure, informational
  {
    CheckOutcome o;
    o.name = "converse-failure";
    o.cases = fs.size();
    std::optional<ConverseWitness> w = find_converse_failure(h, t, induced, fs);
    if (w) {
      std::string values;
      for (ObjectIndex x = 0; x < ho.num_objects(); ++x) {
        values += (x ? ", " : "") + ho.object_id(x) + ":" + std::to_string(w->presheaf->size(x));
      }
      o.detail = "witness found: induced sheaf with sizes {" + values + "}, gamma* of it is " +
                 classification_text(*h.base, w->pulled_back);
    } else {
      o.detail = "no witness within bounds";
    }
    out.outcomes.push_back(std::move(o));
  }

  // lower-star-transfer: gamma_* of a base sheaf is an induced sheaf
  {
    CheckOutcome o;
    o.name = "lower-star-transfer";
    for (const PresheafPtr& p : base_pop.presheaves) {
      if (!classify_presheaf(*p, t).is_sheaf()) continue;
      ++o.cases;
      PresheafPtr pushed = share(gamma_lower_star(h, *p));
      Classification k = classify_presheaf(*pushed, induced);
      if (!k.is_sheaf()) {
        Counterexample cx;
        cx.presheaves = {{"F", p}, {"lower_star_F", pushed}};
        fail(o, "gamma_* of a base sheaf is " + classification_text(ho, k), cx);
        break;
      }
    }
    if (o.passed) {
      o.detail = std::to_string(o.cases) + " base sheaves among " +
                 describe_population(base_pop.presheaves.size(), base_pop.exhaustive, "C0");
    }
    out.outcomes.push_back(std::move(o));
  }

  // discrete-converse: with gamma bijective the implications reverse
  {
    CheckOutcome o;
    o.name = "discrete-converse";
    if (!h.gamma_is_bijective()) {
      o.detail = "skipped: gamma is not bijective";
    } else {
      for (std::size_t i = 0; i < fs.size() && o.passed; ++i) {
        o.cases += 2;
        if (class_ho[i].is_sheaf() != class_star[i].is_sheaf() ||
            class_ho[i].is_separated() != class_star[i].is_separated()) {
          fail(o,
               "F is " + classification_text(ho, class_ho[i]) + " but gamma*F is " +
                   classification_text(*h.base, class_star[i]),
               single("F", fs[i]));
        }
      }
      if (o.passed) o.detail = ho_population;
    }
    out.outcomes.push_back(std::move(o));
  }

  // sheafification engine on the base population
  {
    CheckOutcome o;
    o.name = "sheafification";
    const auto& ps = base_pop.presheaves;
    std::vector<SheafificationResult> alpha;
    for (std::size_t i = 0; i < ps.size() && o.passed; ++i) {
      alpha.push_back(sheafify(ps[i], t));
      const SheafificationResult& s = alpha.back();
      SheafificationResult again = sheafify(s.sheaf, t);
      o.cases += 3;
      if (!classify_presheaf(*s.sheaf, t).is_sheaf()) {
        fail(o, "sheafification is not a sheaf", single("F", ps[i]));
      } else if (!is_tau_iso(s.unit, s, again)) {
        fail(o, "unit F -> aF is not a local isomorphism", single("F", ps[i]));
      } else if (!is_isomorphism(again.unit)) {
        fail(o, "sheafifying a sheafification is not an isomorphism", single("F", ps[i]));
      }
    }
    std::size_t limits_checked = 0;
    for (auto [i, j] : choose_pairs(alpha.size(), bounds.max_pairs / 4, rng)) {
      if (!o.passed) break;
      ++limits_checked;
      Counterexample cx;
      cx.presheaves = {{"F", ps[i]}, {"G", ps[j]}};
      // finite products
      ProductCone cone = product(ps[i], ps[j]);
      SheafificationResult ap = sheafify(cone.product, t);
      ProductCone sheaf_cone = product(alpha[i].sheaf, alpha[j].sheaf);
      PresheafMorphism canonical =
          pair_morphism(sheafify_morphism(cone.first, ap, alpha[i]),
                        sheafify_morphism(cone.second, ap, alpha[j]), sheaf_cone);
      ++o.cases;
      if (!is_isomorphism(canonical)) {
        fail(o, "a(F x G) -> aF x aG is not an isomorphism", cx);
        break;
      }
      // equalizers of the first and last morphism F -> G
      std::vector<PresheafMorphism> homs = hom_presheaves(ps[i], ps[j]);
      if (homs.size() < 2) continue;
      const PresheafMorphism& u = homs.front();
      const PresheafMorphism& v = homs.back();
      Subobject eq = equalizer(u, v);
      SheafificationResult ae = sheafify(eq.object, t);
      Subobject sheaf_eq = equalizer(sheafify_morphism(u, alpha[i], alpha[j]),
                                     sheafify_morphism(v, alpha[i], alpha[j]));
      auto comparison = factor_through(sheafify_morphism(eq.inclusion, ae, alpha[i]), sheaf_eq);
      ++o.cases;
      if (!comparison || !is_isomorphism(*comparison)) {
        cx.presheaves.push_back({"E", eq.object});
        cx.morphisms = {{"u", u}, {"v", v}};
        fail(o, "a(eq(u, v)) -> eq(au, av) is not an isomorphism", cx);
        break;
      }
    }
    if (o.passed) {
      o.detail = describe_population(ps.size(), base_pop.exhaustive, "C0") + ", " +
                 std::to_string(limits_checked) + " pairs for products and equalizers";
    }
    out.outcomes.push_back(std::move(o));
  }
  return out;
}

std::vector<SiteCheck> check_sites(const std::vector<const Site*>& sites, const LemmaBounds& bounds,
                                   Fault fault, std::size_t workers) {
  std::vector<SiteCheck> out(sites.size());
  detail::parallel_for(sites.size(), workers ? workers : detail::default_workers(),
                       [&](std::size_t i) { out[i] = check_site(*sites[i], bounds, fault); });
  return out;
}

}  // namespace sitekit
