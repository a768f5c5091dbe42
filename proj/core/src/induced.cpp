#include "sitekit/induced.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sitekit {

Sieve bracket_sieve(const HomotopyCategoryData& h, const Sieve& j) {
  if (j.mask().size() != h.base->num_morphisms()) {
    throw Error("bracket_sieve: sieve is not over the base category");
  }
  std::vector<MorphismIndex> images;
  for (MorphismIndex f : j.members()) images.push_back(h.gamma[f]);
  return generate_sieve(*h.ho, j.root(), images);
}

Sieve preimage_sieve(const HomotopyCategoryData& h, const Sieve& u) {
  std::vector<bool> mask(h.base->num_morphisms(), false);
  for (MorphismIndex f : h.base->morphisms_into(u.root())) mask[f] = u.contains(h.gamma[f]);
  return Sieve(u.root(), std::move(mask));
}

Sieve thicken_sieve(const HomotopyCategoryData& h, const Sieve& j) {
  return preimage_sieve(h, bracket_sieve(h, j));
}

Subobject gamma_star_sieve(const HomotopyCategoryData& h, const Sieve& u) {
  Subobject in_ho = sieve_presheaf(h.ho, u);
  PresheafMorphism star = gamma_star(h, in_ho.inclusion);
  return {star.source, star};
}

BracketCoverTest::BracketCoverTest(const HomotopyCategoryData& h, const GrothendieckTopology& t)
    : h_(&h), t_(&t) {
  for (ObjectIndex x = 0; x < h.ho->num_objects(); ++x) {
    representable_star_.push_back(share(gamma_star(h, yoneda(h.ho, x))));
    representable_alpha_.push_back(sheafify(representable_star_.back(), t));
  }
}

bool BracketCoverTest::operator()(const Sieve& u) const {
  Subobject in_ho = sieve_presheaf(h_->ho, u);
  PresheafPtr sub = share(gamma_star(*h_, *in_ho.object));
  PresheafMorphism inclusion = gamma_star(*h_, in_ho.inclusion, sub, representable_star_[u.root()]);
  return is_tau_iso(inclusion, sheafify(sub, *t_), representable_alpha_[u.root()]).iso;
}

bool is_bracket_cover(const HomotopyCategoryData& h, const GrothendieckTopology& t,
                      const Sieve& u) {
  return BracketCoverTest(h, t)(u);
}

InducedTopologyReport compute_induced_topology(const HomotopyCategoryData& h,
                                               const GrothendieckTopology& t) {
  if (!same_category(*t.base, *h.base)) {
    throw Error("induced_topology: topology is not on the base category");
  }
  const FiniteCategory& ho = *h.ho;
  InducedTopologyReport out;
  out.via_bracket.resize(ho.num_objects());
  out.via_iso_test.resize(ho.num_objects());
  BracketCoverTest test(h, t);
  for (ObjectIndex x = 0; x < ho.num_objects(); ++x) {
    std::set<Sieve> brackets;
    for (const Sieve& j : t.covers[x]) brackets.insert(bracket_sieve(h, j));
    out.via_bracket[x].assign(brackets.begin(), brackets.end());
    for (const Sieve& u : all_sieves(ho, x)) {
      if (test(u)) out.via_iso_test[x].push_back(u);
    }
  }
  out.agreement = out.via_bracket == out.via_iso_test;
  if (!out.agreement) {
    for (ObjectIndex x = 0; x < ho.num_objects() && !out.witness; ++x) {
      std::vector<Sieve> diff;
      std::set_symmetric_difference(out.via_bracket[x].begin(), out.via_bracket[x].end(),
                                    out.via_iso_test[x].begin(), out.via_iso_test[x].end(),
                                    std::back_inserter(diff));
      if (!diff.empty()) out.witness = diff.front();
    }
  }
  out.induced = make_topology(h.ho, out.via_iso_test);
  out.validation = validate_topology(out.induced);
  return out;
}

InducedTopologyReport induced_topology(const HomotopyCategoryData& h,
                                       const GrothendieckTopology& t) {
  InducedTopologyReport out = compute_induced_topology(h, t);
  if (!out.agreement) {
    const Sieve& w = *out.witness;
    bool bracket = std::binary_search(out.via_bracket[w.root()].begin(),
                                      out.via_bracket[w.root()].end(), w);
    throw TheoremViolation("bracket covers and iso-test covers disagree at " +
                           format_sieve(*h.ho, w) + " on " + h.ho->object_id(w.root()) + " (" +
                           (bracket ? "bracket only" : "iso-test only") + ")");
  }
  if (!out.validation) {
    throw TheoremViolation("induced covers are not a Grothendieck topology: " +
                           out.validation.law + ": " + out.validation.violation);
  }
  return out;
}

CheckOutcome check_cover_reflecting(const HomotopyCategoryData& h, const GrothendieckTopology& t,
                                    const GrothendieckTopology& induced) {
  CheckOutcome out;
  out.name = "cover-reflecting";
  for (ObjectIndex x = 0; x < induced.covers.size(); ++x) {
    for (const Sieve& u : induced.covers[x]) {
      ++out.cases;
      Sieve back = preimage_sieve(h, u);
      if (!t.is_covering(back)) {
        out.passed = false;
        out.detail = "preimage " + format_sieve(*h.base, back) + " of " + format_sieve(*h.ho, u) +
                     " on " + h.ho->object_id(x) + " is not a base cover";
        out.counterexample = Counterexample{out.detail, {}, {}, u, true};
        return out;
      }
    }
  }
  return out;
}

CheckOutcome check_thickening(const HomotopyCategoryData& h, const GrothendieckTopology& t) {
  CheckOutcome out;
  out.name = "thickening";
  const FiniteCategory& c = *h.base;
  auto fail = [&](const Sieve& j, std::string why) {
    out.passed = false;
    out.detail = why + " for " + format_sieve(c, j) + " on " + c.object_id(j.root());
    out.counterexample = Counterexample{out.detail, {}, {}, j, false};
    return out;
  };
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    std::map<Sieve, Sieve> bracket_of_thickened;
    for (const Sieve& j : t.covers[x]) {
      ++out.cases;
      Sieve thick = thicken_sieve(h, j);
      if (!j.subset_of(thick)) return fail(j, "J is not contained in its thickening");
      if (!t.is_covering(thick)) return fail(j, "thickening is not covering");
      if (!(thicken_sieve(h, thick) == thick)) return fail(j, "thickening is not idempotent");
      Sieve bracket = bracket_sieve(h, j);
      if (!(bracket_sieve(h, thick) == bracket)) return fail(j, "[J] differs from [J_Δ]");
      bracket_of_thickened.emplace(thick, bracket);
    }
    std::set<Sieve> brackets;
    for (const auto& [thick, bracket] : bracket_of_thickened) {
      if (!brackets.insert(bracket).second) {
        return fail(thick, "two thickened covers share the bracket " + format_sieve(*h.ho, bracket));
      }
    }
  }
  return out;
}

bool matches_under_gamma(const HomotopyCategoryData& h, const GrothendieckTopology& t,
                         const GrothendieckTopology& induced) {
  if (!h.gamma_is_bijective()) return false;
  for (ObjectIndex x = 0; x < t.covers.size(); ++x) {
    std::set<Sieve> image;
    for (const Sieve& j : t.covers[x]) {
      std::vector<bool> mask(h.ho->num_morphisms(), false);
      for (MorphismIndex f : j.members()) mask[h.gamma[f]] = true;
      image.emplace(x, std::move(mask));
    }
    if (!std::equal(image.begin(), image.end(), induced.covers[x].begin(),
                    induced.covers[x].end())) {
      return false;
    }
  }
  return true;
}

}  // namespace sitekit
