#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sitekit/random_site.hpp"
#include "sitekit/topology.hpp"

using namespace sitekit;
using testing_support::fixture_site;

namespace {

std::vector<std::string> ids(const FiniteCategory& c, const Sieve& s) {
  std::vector<std::string> out;
  for (MorphismIndex f : s.members()) out.push_back(c.morphism_id(f));
  std::sort(out.begin(), out.end());
  return out;
}

Sieve at(const FiniteCategory& c, const std::string& text) { return parse_sieve(c, text); }

std::vector<Site> random_sites(std::size_t n) {
  std::vector<Site> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(load_site(random_site(random_site_seed(11, i))));
  return out;
}

GrothendieckTopology without(const GrothendieckTopology& t, const Sieve& s) {
  auto covers = t.covers;
  auto& row = covers[s.root()];
  row.erase(std::remove(row.begin(), row.end(), s), row.end());
  return make_topology(t.base, covers);
}

}  // namespace

TEST_CASE("generated sieves") {
  const FiniteCategory& b = *fixture_site("B").base();
  CHECK(ids(b, at(b, "f1,f2@y")) == std::vector<std::string>{"f1", "f2"});
  CHECK(ids(b, at(b, "id_y@y")) == std::vector<std::string>{"f1", "f2", "id_y"});
  CHECK(is_maximal(b, at(b, "id_y@y")));
  const FiniteCategory& d = *fixture_site("D").base();
  CHECK(ids(d, at(d, "u@c")) == std::vector<std::string>{"u"});
  CHECK(at(d, "@c").empty());
  CHECK_THROWS_AS(at(d, "u@b"), Error);
}

TEST_CASE("pullbacks") {
  const FiniteCategory& b = *fixture_site("B").base();
  Sieve j = at(b, "f1,f2@y");
  Sieve back = pullback_sieve(b, b.morphism_index("f1"), j);
  CHECK(back.root() == b.object_index("x"));
  CHECK(is_maximal(b, back));

  const FiniteCategory& d = *fixture_site("D").base();
  Sieve u = at(d, "u@c");
  Sieve along_v = pullback_sieve(d, d.morphism_index("v"), u);
  CHECK(along_v.root() == d.object_index("b"));
  CHECK(along_v.empty());

  for (const std::string& name : fixture_names()) {
    const FiniteCategory& c = *fixture_site(name).base();
    for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
      for (const Sieve& s : all_sieves(c, x)) {
        CHECK(pullback_sieve(c, c.identity(x), s) == s);
        for (MorphismIndex h : c.morphisms_into(x)) {
          Sieve p = pullback_sieve(c, h, s);
          CHECK(validate_sieve(c, p).passed());
          CHECK(p.mask() == oracle::pullback(c, h, s.mask()));
        }
      }
    }
  }
}

TEST_CASE("sieve lattice matches the brute-force lattice") {
  std::vector<Site> sites = random_sites(30);
  std::vector<const Site*> all;
  for (const std::string& name : fixture_names()) all.push_back(&fixture_site(name));
  for (const Site& s : sites) all.push_back(&s);
  for (const Site* site : all) {
    const FiniteCategory& c = *site->base();
    for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
      std::set<oracle::Mask> fast, slow;
      for (const Sieve& s : all_sieves(c, x)) {
        CHECK(validate_sieve(c, s).passed());
        fast.insert(s.mask());
        // generation from members is the identity on sieves
        auto m = s.members();
        CHECK(generate_sieve(c, x, m) == s);
      }
      for (auto& m : oracle::sieves_on(c, x)) slow.insert(m);
      CHECK(fast == slow);
    }
  }
}

TEST_CASE("topology validation examples") {
  const Site& b = fixture_site("B");
  const FiniteCategory& cb = *b.base();
  CHECK(validate_topology(b.topology).passed());
  ValidationReport r = validate_topology(without(b.topology, maximal_sieve(cb, cb.object_index("x"))));
  CHECK(r.law == "maximality");
  CHECK(r.violation.find(" x ") != std::string::npos);

  const Site& d = fixture_site("D");
  const FiniteCategory& cd = *d.base();
  CHECK(validate_topology(d.topology).passed());
  // The maximal sieve on a is also the pullback of {u, v} along u, so dropping
  // it is reported by the first law it breaks.
  CHECK(validate_topology(without(d.topology, maximal_sieve(cd, cd.object_index("a")))).law ==
        "maximality");
  // {u} alone covering c: its pullback along v is empty on b.
  std::vector<std::vector<Sieve>> covers(cd.num_objects());
  for (ObjectIndex x = 0; x < cd.num_objects(); ++x) covers[x].push_back(maximal_sieve(cd, x));
  covers[cd.object_index("c")].push_back(at(cd, "u@c"));
  ValidationReport s = validate_topology(make_topology(d.base(), covers));
  CHECK(s.law == "stability");
  CHECK(s.violation.find("along v") != std::string::npos);
}

TEST_CASE("saturation examples") {
  const Site& b = fixture_site("B");
  CategoryPtr c = b.base();
  ObjectIndex y = c->object_index("y"), x = c->object_index("x");
  MorphismIndex f1 = c->morphism_index("f1"), f2 = c->morphism_index("f2");

  GeneratingCovers both(c->num_objects());
  both[y].push_back({f1, f2});
  GrothendieckTopology tau = saturate_topology(c, both);
  CHECK(tau == b.topology);
  CHECK(tau.covers[y] == std::vector<Sieve>{at(*c, "f1,f2@y"), maximal_sieve(*c, y)});
  CHECK(tau.covers[x] == std::vector<Sieve>{maximal_sieve(*c, x)});

  CHECK(saturate_topology(c, GeneratingCovers(c->num_objects())) == trivial_topology(c));

  GeneratingCovers one(c->num_objects());
  one[y].push_back({f1});
  GrothendieckTopology t1 = saturate_topology(c, one);
  std::set<std::vector<std::string>> got;
  for (const Sieve& s : t1.covers[y]) got.insert(ids(*c, s));
  // every superset of {f1} covers
  for (const std::vector<std::string>& up :
       std::vector<std::vector<std::string>>{{"f1"}, {"f1", "f2"}, {"f1", "f2", "id_y"}}) {
    CHECK(got.count(up) == 1);
  }
  // stability: {f1} pulled back along f2 is empty on x, and then local
  // character forces every sieve on y
  CHECK(t1.is_covering(empty_sieve(*c, x)));
  CHECK(got.size() == 5);
  CHECK(t1.covers[y] == all_sieves(*c, y));

  // the empty family forces the empty sieve, which is legal
  GeneratingCovers empty(c->num_objects());
  empty[y].push_back({});
  GrothendieckTopology degenerate = saturate_topology(c, empty);
  CHECK(validate_topology(degenerate).passed());
  CHECK(degenerate.is_covering(empty_sieve(*c, y)));
}

TEST_CASE("saturation equals the meet of all topologies containing the generators") {
  std::vector<Site> sites = random_sites(60);
  std::size_t compared = 0;
  auto check = [&](const Site& site) {
    const FiniteCategory& c = *site.base();
    // regenerate from single random-ish sieves: every non-maximal cover on its own
    for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
      for (const Sieve& s : all_sieves(c, x)) {
        oracle::CoverSets gens(c.num_objects());
        gens[x].insert(s.mask());
        auto slow = oracle::saturate(c, gens, 12);
        if (!slow) return;
        std::vector<std::vector<Sieve>> seed(c.num_objects());
        seed[x].push_back(s);
        GrothendieckTopology fast = saturate_topology(site.base(), seed);
        CHECK(oracle::cover_sets(fast) == *slow);
        CHECK(oracle::is_topology(c, oracle::cover_sets(fast)));
        ++compared;
      }
    }
  };
  for (const std::string& name : fixture_names()) check(fixture_site(name));
  for (const Site& s : sites) check(s);
  CHECK(compared > 40);
}

TEST_CASE("topology properties on random sites") {
  std::vector<Site> sites = random_sites(100);
  for (const std::string& name : fixture_names()) sites.push_back(fixture_site(name));
  for (const Site& site : sites) {
    const GrothendieckTopology& t = site.topology;
    const FiniteCategory& c = *site.base();
    CAPTURE(site.label());
    CHECK(validate_topology(t).passed());
    // idempotent
    CHECK(saturate_topology(site.base(), t.covers) == t);
    for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
      for (const Sieve& a : t.covers[x]) {
        for (const Sieve& b : t.covers[x]) CHECK(t.is_covering(intersect(a, b)));
      }
      Sieve minimal = t.minimal_cover(x);
      CHECK(t.is_covering(minimal));
      for (const Sieve& a : t.covers[x]) CHECK(minimal.subset_of(a));
    }
    CHECK(is_coarser_or_equal(trivial_topology(site.base()), t));
  }
}

TEST_CASE("sieve text") {
  const FiniteCategory& b = *fixture_site("B").base();
  Sieve j = at(b, "f2,f1@y");
  CHECK(format_sieve(b, j) == "{f1, f2}");
  CHECK(describe_sieve(b, maximal_sieve(b, b.object_index("y"))) == "maximal");
  CHECK(format_sieve(b, at(b, "@y")) == "{}");
  CHECK_THROWS_AS(at(b, "f1"), Error);
  CHECK_THROWS_AS(at(b, "f9@y"), Error);
}
