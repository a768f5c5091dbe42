#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sitekit/enumerate.hpp"
#include "sitekit/induced.hpp"
#include "sitekit/random_site.hpp"

using namespace sitekit;
using testing_support::fixture_site;
using testing_support::named;

namespace {

std::vector<Site> random_sites(std::size_t n) {
  std::vector<Site> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(load_site(random_site(random_site_seed(31, i))));
  return out;
}

std::vector<const Site*> every_site(const std::vector<Site>& extra) {
  std::vector<const Site*> out;
  for (const std::string& name : fixture_names()) out.push_back(&fixture_site(name));
  for (const Site& s : extra) out.push_back(&s);
  return out;
}

std::vector<PresheafPtr> base_population(const Site& s, std::size_t limit) {
  return sample_presheaves(s.base(), 2, limit, 3).presheaves;
}
std::vector<PresheafPtr> ho_population(const Site& s, std::size_t limit) {
  return sample_presheaves(s.ho.ho, 2, limit, 4).presheaves;
}

std::vector<std::size_t> sizes(const SetPresheaf& f) {
  std::vector<std::size_t> out;
  for (ObjectIndex x = 0; x < f.category().num_objects(); ++x) out.push_back(f.size(x));
  return out;
}

// Edge-generated equivalence, computed from the raw edge list.
std::vector<std::size_t> edge_classes(const EnrichedCategory& e) {
  std::vector<std::size_t> label(e.base->num_morphisms());
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const HomotopyEdge& edge : e.edges) {
      std::size_t m = std::min(label[edge.first], label[edge.second]);
      for (std::size_t& l : label) {
        if ((l == label[edge.first] || l == label[edge.second]) && l != m) {
          l = m;
          changed = true;
        }
      }
    }
  }
  return label;
}

}  // namespace

TEST_CASE("connected components") {
  CHECK(pi0({"f1", "f2"}, {{"f1", "f2"}}).size() == 1);
  CHECK(pi0({"f1", "f2"}, {}).size() == 2);
  auto e = pi0({"id", "h"}, {{"id", "h"}});
  REQUIRE(e.size() == 1);
  CHECK(e.front() == std::vector<std::string>{"h", "id"});
  CHECK_THROWS_AS(pi0({"a"}, {{"a", "b"}}), Error);
}

TEST_CASE("homotopy categories of the fixtures") {
  const Site& b = fixture_site("B");
  const FiniteCategory& hb = *b.ho.ho;
  ObjectIndex x = hb.object_index("x"), y = hb.object_index("y");
  REQUIRE(hb.hom(x, y).size() == 1);
  CHECK(hb.morphism_id(hb.hom(x, y)[0]) == "[f1]");
  CHECK(hb.hom(x, x).size() == 1);
  CHECK(hb.hom(y, y).size() == 1);
  CHECK(hb.is_identity(hb.hom(x, x)[0]));

  const Site& c = fixture_site("C");
  CHECK(c.ho.gamma_is_bijective());
  CHECK(c.ho.ho->num_morphisms() == c.base()->num_morphisms());

  const Site& e = fixture_site("E");
  const FiniteCategory& he = *e.ho.ho;
  REQUIRE(he.num_morphisms() == 1);
  MorphismIndex cls = he.hom(0, 0)[0];
  CHECK(he.morphism_id(cls) == "[h]");
  CHECK(he.is_identity(cls));
  CHECK(he.compose(cls, cls) == cls);
  CHECK(e.ho.fiber[cls].size() == 2);
}

TEST_CASE("gamma is a functor whose fibers are the edge classes") {
  std::vector<Site> sites = random_sites(80);
  for (const Site* site : every_site(sites)) {
    const HomotopyCategoryData& h = site->ho;
    const FiniteCategory& c = *h.base;
    CHECK(validate_category(*h.ho).passed());
    for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
      CHECK(h.gamma[c.identity(x)] == h.ho->identity(x));
    }
    for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
      CHECK(h.ho->dom(h.gamma[f]) == c.dom(f));
      CHECK(h.ho->cod(h.gamma[f]) == c.cod(f));
      for (MorphismIndex g : c.morphisms_out_of(c.cod(f))) {
        CHECK(h.gamma[c.compose(g, f)] == h.ho->compose(h.gamma[g], h.gamma[f]));
      }
    }
    std::vector<std::size_t> cls = edge_classes(site->enriched);
    for (MorphismIndex f = 0; f < c.num_morphisms(); ++f) {
      for (MorphismIndex g = 0; g < c.num_morphisms(); ++g) {
        CHECK((h.gamma[f] == h.gamma[g]) == (cls[f] == cls[g]));
      }
    }
  }
}

TEST_CASE("enrichment validation") {
  CategoryPtr c = CategoryBuilder()
                      .object("a").object("b").object("c")
                      .morphism("f", "a", "b").morphism("f2", "a", "b")
                      .morphism("g", "b", "c")
                      .morphism("p", "a", "c").morphism("q", "a", "c")
                      .compose("g", "f", "p").compose("g", "f2", "q")
                      .build();
  REQUIRE(validate_category(*c).passed());
  MorphismIndex f = c->morphism_index("f"), f2 = c->morphism_index("f2");
  MorphismIndex p = c->morphism_index("p"), q = c->morphism_index("q");
  EnrichedCategory bad{c, {{f, f2}}};
  CHECK_FALSE(validate_enrichment(bad).passed());
  CHECK_THROWS_AS(homotopy_category(bad), Error);
  EnrichedCategory good{c, {{f, f2}, {p, q}}};
  CHECK(validate_enrichment(good).passed());
  EnrichedCategory skew{c, {{f, p}}};
  CHECK_FALSE(validate_enrichment(skew).passed());
  CHECK(validate_enrichment(discrete_enrichment(c)).passed());
  CHECK(homotopy_category(discrete_enrichment(c)).gamma_is_bijective());
}

TEST_CASE("pullback along gamma") {
  const Site& b = fixture_site("B");
  SetPresheaf g = gamma_star(b.ho, *named(b, "G"));
  const FiniteCategory& c = *b.base();
  for (const char* f : {"f1", "f2"}) {
    ElementMap r = g.restriction(c.morphism_index(f));
    CHECK(r == ElementMap{0, 1});
  }
  CHECK(validate_presheaf(g, c).passed());

  const Site& dc = fixture_site("C");
  for (ObjectIndex x = 0; x < dc.base()->num_objects(); ++x) {
    CHECK(sizes(gamma_star(dc.ho, yoneda(dc.ho.ho, x))) == sizes(yoneda(dc.base(), x)));
  }

  for (const std::string& name : fixture_names()) {
    const Site& s = fixture_site(name);
    auto pop = ho_population(s, 6);
    for (const PresheafPtr& f : pop) {
      for (const PresheafPtr& h : pop) {
        SetPresheaf lhs = gamma_star(s.ho, *product(f, h).product);
        PresheafPtr ff = share(gamma_star(s.ho, *f)), hh = share(gamma_star(s.ho, *h));
        CHECK(lhs == *product(ff, hh).product);
      }
    }
  }
}

TEST_CASE("left Kan extension") {
  std::vector<Site> sites = random_sites(30);
  for (const Site* site : every_site(sites)) {
    const HomotopyCategoryData& h = site->ho;
    for (ObjectIndex x = 0; x < h.base->num_objects(); ++x) {
      CHECK(sizes(gamma_shriek(h, yoneda(h.base, x))) == sizes(yoneda(h.ho, x)));
    }
    CHECK(gamma_shriek(h, empty_presheaf(h.base)).total_size() == 0);
    for (const PresheafPtr& f : base_population(*site, 24)) {
      SetPresheaf lan = gamma_shriek(h, *f);
      CHECK(validate_presheaf(lan, *h.ho).passed());
      for (ObjectIndex z = 0; z < h.ho->num_objects(); ++z) {
        CHECK(lan.size(z) == oracle::coend_size(h, *f, z));
      }
    }
  }

  const Site& b = fixture_site("B");
  CategoryPtr c = b.base();
  Sieve j = parse_sieve(*c, "f1,f2@y");
  Subobject u = sieve_presheaf(c, j);
  ObjectIndex x = c->object_index("x");
  CHECK(gamma_shriek(b.ho, *u.object).size(x) == 2);
  CHECK(oracle::coend_size(b.ho, *u.object, x) == 2);
  Sieve bracket = bracket_sieve(b.ho, j);
  CHECK(sieve_presheaf(b.ho.ho, bracket).object->size(x) == 1);
}

TEST_CASE("right Kan extension") {
  const Site& b = fixture_site("B");
  CHECK(gamma_lower_star(b.ho, *named(b, "K2")).size(b.base()->object_index("y")) == 2);

  const Site& c = fixture_site("C");
  for (const PresheafPtr& f : base_population(c, 32)) {
    CHECK(sizes(gamma_lower_star(c.ho, *f)) == sizes(*f));
  }

  std::vector<Site> sites = random_sites(30);
  for (const Site* site : every_site(sites)) {
    const HomotopyCategoryData& h = site->ho;
    for (const PresheafPtr& f : base_population(*site, 16)) {
      SetPresheaf ran = gamma_lower_star(h, *f);
      CHECK(validate_presheaf(ran, *h.ho).passed());
      for (ObjectIndex z = 0; z < h.ho->num_objects(); ++z) {
        SetPresheaf probe = gamma_star(h, yoneda(h.ho, z));
        CHECK(ran.size(z) == oracle::natural_transformations(probe, *f).size());
      }
    }
  }
}

TEST_CASE("adjunction hom-set counts") {
  std::vector<Site> sites = random_sites(20);
  for (const Site* site : every_site(sites)) {
    const HomotopyCategoryData& h = site->ho;
    auto base = base_population(*site, 10);
    auto ho = ho_population(*site, 10);
    for (const PresheafPtr& f : base) {
      SetPresheaf lan = gamma_shriek(h, *f);
      SetPresheaf ran = gamma_lower_star(h, *f);
      for (const PresheafPtr& g : ho) {
        SetPresheaf star = gamma_star(h, *g);
        std::size_t pulled_to = oracle::natural_transformations(star, *f).size();
        std::size_t pushed_to = oracle::natural_transformations(*g, ran).size();
        CHECK(pulled_to == pushed_to);
        std::size_t from_lan = oracle::natural_transformations(lan, *g).size();
        std::size_t into_star = oracle::natural_transformations(*f, star).size();
        CHECK(from_lan == into_star);
      }
    }
  }
}

TEST_CASE("triangle identities") {
  std::vector<Site> sites = random_sites(20);
  for (const Site* site : every_site(sites)) {
    const HomotopyCategoryData& h = site->ho;
    for (const PresheafPtr& f : base_population(*site, 12)) {
      // ε_{γ!F} ∘ γ!(η_F) = id
      LeftKanExtension l1(h, f);
      PresheafMorphism eta = shriek_unit(h, l1);
      LeftKanExtension l2(h, eta.target);
      PresheafMorphism back = compose(shriek_counit(h, l2, l1.value()), shriek_morphism(h, eta, l1, l2));
      CHECK(back == identity_morphism(l1.value()));

      // γ_*(ε_F) ∘ η_{γ_*F} = id
      RightKanExtension r1(h, f);
      PresheafMorphism eps = lower_star_counit(h, r1);
      RightKanExtension r2(h, eps.source);
      PresheafMorphism unit = lower_star_unit(h, r1.value(), r2);
      PresheafMorphism loop = compose(lower_star_morphism(eps, r2, r1), unit);
      CHECK(loop == identity_morphism(r1.value()));
    }
    for (const PresheafPtr& g : ho_population(*site, 12)) {
      PresheafPtr star = share(gamma_star(h, *g));
      // γ*(ε_G) ∘ η_{γ*G} = id
      LeftKanExtension l(h, star);
      PresheafMorphism eta = shriek_unit(h, l);
      PresheafMorphism eps = shriek_counit(h, l, g);
      PresheafMorphism eps_star = gamma_star(h, eps, eta.target, star);
      CHECK(compose(eps_star, eta) == identity_morphism(star));
      // ε_{γ*G} ∘ γ*(η_G) = id
      RightKanExtension r(h, star);
      PresheafMorphism unit = lower_star_unit(h, g, r);
      PresheafMorphism counit = lower_star_counit(h, r);
      PresheafMorphism unit_star = gamma_star(h, unit, star, counit.source);
      CHECK(compose(counit, unit_star) == identity_morphism(star));
    }
  }
}

TEST_CASE("pushforward sends sheaves to sheaves for the induced topology") {
  for (const char* name : {"B", "D", "E"}) {
    const Site& s = fixture_site(name);
    GrothendieckTopology induced = induced_topology(s.ho, s.topology).induced;
    std::size_t sheaves = 0;
    for (const PresheafPtr& f : enumerate_presheaves(s.base(), 2, 100000)) {
      if (!classify_presheaf(*f, s.topology).is_sheaf()) continue;
      ++sheaves;
      CHECK(classify_presheaf(gamma_lower_star(s.ho, *f), induced).is_sheaf());
    }
    CHECK(sheaves > 0);
  }
}
