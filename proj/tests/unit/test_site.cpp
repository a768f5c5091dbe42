#include <doctest.h>

#include "helpers.hpp"
#include "sitekit/comparison.hpp"
#include "sitekit/random_site.hpp"

using namespace sitekit;
using nlohmann::json;
using testing_support::fixture_site;

namespace {

json fixture_json(const std::string& name) { return site_to_json(fixture(name)); }

std::string load_error(const json& j) {
  try {
    load_site(site_from_json(j));
  } catch (const LoadError& e) {
    return e.what();
  }
  return {};
}

std::string parse_error(const std::string& text) {
  try {
    parse_site(text);
  } catch (const LoadError& e) {
    return e.what();
  }
  return {};
}

bool mentions(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("fixtures round-trip through text and validate") {
  for (const std::string& name : fixture_names()) {
    SiteDocument doc = fixture(name);
    std::string text = serialize_site(doc);
    CHECK(parse_site(text) == doc);
    CHECK(serialize_site(parse_site(text)) == text);
    LoadResult r = try_load_site(parse_site(text));
    REQUIRE(r.site);
    for (const LoadStage& s : r.stages) CHECK(s.report.passed());
    CHECK(r.stages.front().name == "category");
  }
  CHECK_THROWS_AS(fixture("Z"), Error);
}

TEST_CASE("load errors name the offending key") {
  json b = fixture_json("B");
  b["edges"][0][1] = "f3";
  std::string e = load_error(b);
  CHECK(mentions(e, "unknown morphism"));
  CHECK(mentions(e, "f3"));

  json t = fixture_json("B");
  t["topology"]["x"] = json::array({json::array({"f1"})});
  CHECK(mentions(load_error(t), "topology"));

  json m = fixture_json("B");
  m["morphisms"][0]["dom"] = 3;
  CHECK(mentions(parse_error(m.dump()), "morphisms[0].dom"));

  json k = fixture_json("B");
  k["colour"] = "red";
  CHECK(mentions(parse_error(k.dump()), "colour"));

  CHECK(mentions(parse_error("{\"objects\": [}"), "syntax"));
  CHECK(mentions(parse_error("[]"), "object"));

  json bad_key = fixture_json("E");
  bad_key["compose"] = {{"h.h", "h"}};
  CHECK_FALSE(parse_error(bad_key.dump()).empty());
}

TEST_CASE("law violations are load errors") {
  // identity remapped
  json id = fixture_json("B");
  id["compose"] = {{"id_y∘f1", "f2"}};
  CHECK(mentions(load_error(id), "identity"));

  // non-associative monoid table on one object
  json assoc = {{"objects", {"z"}},
                {"morphisms", {{{"name", "h"}, {"dom", "z"}, {"cod", "z"}},
                               {{"name", "k"}, {"dom", "z"}, {"cod", "z"}}}},
                {"compose", {{"h∘h", "id_z"}, {"h∘k", "id_z"}, {"k∘h", "id_z"}, {"k∘k", "id_z"}}}};
  std::string e = load_error(assoc);
  CHECK(mentions(e, "category: associativity"));

  // whisker-incompatible edge
  json whisker = {{"objects", {"a", "b", "c"}},
                  {"morphisms", {{{"name", "f"}, {"dom", "a"}, {"cod", "b"}},
                                 {{"name", "f2"}, {"dom", "a"}, {"cod", "b"}},
                                 {{"name", "g"}, {"dom", "b"}, {"cod", "c"}},
                                 {{"name", "p"}, {"dom", "a"}, {"cod", "c"}},
                                 {{"name", "q"}, {"dom", "a"}, {"cod", "c"}}}},
                  {"compose", {{"g∘f", "p"}, {"g∘f2", "q"}}},
                  {"edges", json::array({json::array({"f", "f2"})})}};
  CHECK(mentions(load_error(whisker), "enrichment: whiskering"));

  // presheaf that is not functorial
  json e2 = fixture_json("E");
  e2["presheaves"] = {{"T", {{"values", {{"z", {"0", "1"}}}}, {"restrict", {{"h", {{"0", "1"}, {"1", "0"}}}}}}}};
  CHECK(mentions(load_error(e2), "presheaf T"));
}

TEST_CASE("the empty site is legal") {
  SiteDocument empty = parse_site("{\"objects\": []}");
  Site s = load_site(empty);
  CHECK(s.base()->num_objects() == 0);
  CHECK(s.label() == "site");
  CHECK(check_site(s, LemmaBounds{}).passed());
}

TEST_CASE("digest ignores order, formatting and the name") {
  SiteDocument doc = fixture("D");
  std::string digest = site_digest(doc);
  CHECK(digest.rfind("sha256:", 0) == 0);
  CHECK(digest.size() == 7 + 64);

  SiteDocument shuffled = doc;
  std::reverse(shuffled.objects.begin(), shuffled.objects.end());
  std::reverse(shuffled.morphisms.begin(), shuffled.morphisms.end());
  shuffled.name = "renamed";
  CHECK(site_digest(shuffled) == digest);
  CHECK(site_digest(parse_site(site_to_json(doc).dump())) == digest);
  CHECK(canonical_site(shuffled) == canonical_site(doc));

  SiteDocument changed = doc;
  changed.edges.clear();
  changed.topology.clear();
  CHECK(site_digest(changed) != digest);

  for (const std::string& a : fixture_names()) {
    for (const std::string& b : fixture_names()) {
      if (a != b) CHECK(site_digest(fixture(a)) != site_digest(fixture(b)));
    }
  }
  CHECK(text_digest("abc") ==
        "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("presheaf declarations round-trip") {
  for (const std::string& name : fixture_names()) {
    const Site& site = fixture_site(name);
    for (const auto& [pname, p] : site.presheaves) {
      SiteDocument doc = site.document;
      doc.presheaves = {{"copy", presheaf_decl(*p.presheaf, p.over_ho)}};
      Site again = load_site(doc);
      CHECK(*again.presheaves.at("copy").presheaf == *p.presheaf);
      CHECK(again.presheaves.at("copy").over_ho == p.over_ho);
    }
  }
}

TEST_CASE("random sites serialize and reload") {
  for (std::size_t i = 0; i < 40; ++i) {
    SiteDocument doc = random_site(random_site_seed(61, i));
    CHECK(parse_site(serialize_site(doc)) == doc);
    Site s = load_site(doc);
    CHECK(s.digest == site_digest(doc));
    CHECK(s.label() == doc.name);
  }
}
