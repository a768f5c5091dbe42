#include "sitekit/site.hpp"

#include <algorithm>
#include <set>

#include <openssl/evp.h>

namespace sitekit {

using nlohmann::json;

namespace {

constexpr std::string_view kCompose = "\xe2\x88\x98";  // ∘

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw LoadError(key + ": " + what);
}

const std::string& as_string(const json& j, const std::string& key) {
  if (!j.is_string()) bad(key, "expected a string");
  return j.get_ref<const std::string&>();
}

std::vector<std::string> as_strings(const json& j, const std::string& key) {
  if (!j.is_array()) bad(key, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_string(j[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

const json& as_object(const json& j, const std::string& key) {
  if (!j.is_object()) bad(key, "expected an object");
  return j;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

CompositeDecl parse_composite(const std::string& key, const json& value) {
  std::size_t at = key.find(kCompose);
  if (at == std::string::npos || key.find(kCompose, at + 1) != std::string::npos) {
    bad("compose." + key, "key must have the form \"g\xe2\x88\x98" "f\"");
  }
  CompositeDecl c{trim(std::string_view(key).substr(0, at)),
                  trim(std::string_view(key).substr(at + kCompose.size())),
                  as_string(value, "compose." + key)};
  if (c.g.empty() || c.f.empty()) bad("compose." + key, "empty morphism name");
  return c;
}

PresheafDecl parse_presheaf(const std::string& key, const json& j) {
  as_object(j, key);
  PresheafDecl out;
  for (const auto& [k, v] : j.items()) {
    if (k == "over") {
      const std::string& over = as_string(v, key + ".over");
      if (over != "base" && over != "ho") bad(key + ".over", "expected \"base\" or \"ho\"");
      out.over_ho = over == "ho";
    } else if (k == "values") {
      for (const auto& [obj, elems] : as_object(v, key + ".values").items()) {
        out.values[obj] = as_strings(elems, key + ".values." + obj);
      }
    } else if (k == "restrict") {
      for (const auto& [mor, table] : as_object(v, key + ".restrict").items()) {
        auto& row = out.restrict[mor];
        for (const auto& [from, to] : as_object(table, key + ".restrict." + mor).items()) {
          row[from] = as_string(to, key + ".restrict." + mor + "." + from);
        }
      }
    } else {
      bad(key + "." + k, "unknown key");
    }
  }
  return out;
}

json presheaf_to_json(const PresheafDecl& p) {
  json values = json::object();
  for (const auto& [obj, elems] : p.values) values[obj] = elems;
  json restrict = json::object();
  for (const auto& [mor, row] : p.restrict) {
    json r = json::object();
    for (const auto& [from, to] : row) r[from] = to;
    restrict[mor] = r;
  }
  return json{{"over", p.over_ho ? "ho" : "base"}, {"values", values}, {"restrict", restrict}};
}

std::string hex_sha256(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

}  // namespace

SiteDocument site_from_json(const json& j) {
  as_object(j, "site");
  SiteDocument doc;
  for (const auto& [key, v] : j.items()) {
    if (key == "name") {
      doc.name = as_string(v, "name");
    } else if (key == "objects") {
      doc.objects = as_strings(v, "objects");
    } else if (key == "morphisms") {
      if (!v.is_array()) bad("morphisms", "expected an array");
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::string k = "morphisms[" + std::to_string(i) + "]";
        as_object(v[i], k);
        MorphismDecl m;
        for (const auto& [field, x] : v[i].items()) {
          if (field == "name") m.name = as_string(x, k + ".name");
          else if (field == "dom") m.dom = as_string(x, k + ".dom");
          else if (field == "cod") m.cod = as_string(x, k + ".cod");
          else bad(k + "." + field, "unknown key");
        }
        if (m.name.empty() || m.dom.empty() || m.cod.empty()) {
          bad(k, "needs name, dom and cod");
        }
        doc.morphisms.push_back(std::move(m));
      }
    } else if (key == "identities") {
      for (const auto& [obj, mor] : as_object(v, "identities").items()) {
        doc.identities[obj] = as_string(mor, "identities." + obj);
      }
    } else if (key == "compose") {
      for (const auto& [gf, h] : as_object(v, "compose").items()) {
        doc.compose.push_back(parse_composite(gf, h));
      }
    } else if (key == "edges") {
      if (!v.is_array()) bad("edges", "expected an array of pairs");
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::string k = "edges[" + std::to_string(i) + "]";
        std::vector<std::string> pair = as_strings(v[i], k);
        if (pair.size() != 2) bad(k, "expected two morphism names");
        doc.edges.emplace_back(pair[0], pair[1]);
      }
    } else if (key == "topology") {
      for (const auto& [obj, families] : as_object(v, "topology").items()) {
        std::string k = "topology." + obj;
        if (!families.is_array()) bad(k, "expected an array of generator families");
        auto& out = doc.topology[obj];
        for (std::size_t i = 0; i < families.size(); ++i) {
          out.push_back(as_strings(families[i], k + "[" + std::to_string(i) + "]"));
        }
      }
    } else if (key == "presheaves") {
      for (const auto& [name, p] : as_object(v, "presheaves").items()) {
        doc.presheaves[name] = parse_presheaf("presheaves." + name, p);
      }
    } else {
      bad(key, "unknown key");
    }
  }
  return doc;
}

SiteDocument parse_site(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LoadError(std::string("syntax: ") + e.what());
  }
  return site_from_json(j);
}

json site_to_json(const SiteDocument& doc) {
  json j = json::object();
  if (!doc.name.empty()) j["name"] = doc.name;
  j["objects"] = doc.objects;
  json morphisms = json::array();
  for (const MorphismDecl& m : doc.morphisms) {
    morphisms.push_back({{"name", m.name}, {"dom", m.dom}, {"cod", m.cod}});
  }
  j["morphisms"] = morphisms;
  if (!doc.identities.empty()) j["identities"] = doc.identities;
  json compose = json::object();
  for (const CompositeDecl& c : doc.compose) {
    compose[c.g + std::string(kCompose) + c.f] = c.h;
  }
  j["compose"] = compose;
  json edges = json::array();
  for (const auto& [a, b] : doc.edges) edges.push_back({a, b});
  j["edges"] = edges;
  json topology = json::object();
  for (const auto& [obj, families] : doc.topology) topology[obj] = families;
  j["topology"] = topology;
  if (!doc.presheaves.empty()) {
    json ps = json::object();
    for (const auto& [name, p] : doc.presheaves) ps[name] = presheaf_to_json(p);
    j["presheaves"] = ps;
  }
  return j;
}

std::string serialize_site(const SiteDocument& doc) { return site_to_json(doc).dump(2) + "\n"; }

SiteDocument canonical_site(const SiteDocument& doc) {
  SiteDocument c = doc;
  c.name.clear();
  std::sort(c.objects.begin(), c.objects.end());
  std::sort(c.morphisms.begin(), c.morphisms.end(),
            [](const MorphismDecl& a, const MorphismDecl& b) { return a.name < b.name; });
  std::sort(c.compose.begin(), c.compose.end(), [](const CompositeDecl& a, const CompositeDecl& b) {
    return std::tie(a.g, a.f, a.h) < std::tie(b.g, b.f, b.h);
  });
  for (auto& [a, b] : c.edges) {
    if (b < a) std::swap(a, b);
  }
  std::sort(c.edges.begin(), c.edges.end());
  c.edges.erase(std::unique(c.edges.begin(), c.edges.end()), c.edges.end());
  for (auto& [obj, families] : c.topology) {
    for (auto& family : families) {
      std::sort(family.begin(), family.end());
      family.erase(std::unique(family.begin(), family.end()), family.end());
    }
    std::sort(families.begin(), families.end());
    families.erase(std::unique(families.begin(), families.end()), families.end());
  }
  for (auto& [name, p] : c.presheaves) {
    for (auto& [obj, elems] : p.values) std::sort(elems.begin(), elems.end());
  }
  return c;
}

std::string site_digest(const SiteDocument& doc) {
  return text_digest(site_to_json(canonical_site(doc)).dump());
}

std::string text_digest(std::string_view text) { return "sha256:" + hex_sha256(text); }

PresheafDecl presheaf_decl(const SetPresheaf& f, bool over_ho) {
  const FiniteCategory& c = f.category();
  PresheafDecl out;
  out.over_ho = over_ho;
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) out.values[c.object_id(x)] = f.value(x);
  for (MorphismIndex m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    auto& row = out.restrict[c.morphism_id(m)];
    for (ElementIndex e = 0; e < f.size(c.cod(m)); ++e) {
      row[f.element_id(c.cod(m), e)] = f.element_id(c.dom(m), f.restrict(m, e));
    }
  }
  return out;
}

namespace {

ValidationReport check_names(const SiteDocument& doc) {
  std::set<std::string> objects, morphisms;
  for (const std::string& x : doc.objects) {
    if (!objects.insert(x).second) return ValidationReport::fail("objects", "duplicate object " + x);
  }
  for (const MorphismDecl& m : doc.morphisms) {
    if (!morphisms.insert(m.name).second) {
      return ValidationReport::fail("morphisms", "duplicate morphism " + m.name);
    }
    if (!objects.count(m.dom)) return ValidationReport::fail("morphisms." + m.name, "unknown object " + m.dom);
    if (!objects.count(m.cod)) return ValidationReport::fail("morphisms." + m.name, "unknown object " + m.cod);
  }
  for (const auto& [obj, mor] : doc.identities) {
    if (!objects.count(obj)) return ValidationReport::fail("identities", "unknown object " + obj);
    if (!morphisms.count(mor)) return ValidationReport::fail("identities." + obj, "unknown morphism " + mor);
  }
  for (const std::string& x : doc.objects) {
    if (!doc.identities.count(x)) morphisms.insert("id_" + x);
  }
  for (const CompositeDecl& c : doc.compose) {
    std::string key = "compose." + c.g + std::string(kCompose) + c.f;
    for (const std::string* name : {&c.g, &c.f, &c.h}) {
      if (!morphisms.count(*name)) return ValidationReport::fail(key, "unknown morphism " + *name);
    }
  }
  return ValidationReport::pass();
}

}  // namespace

LoadResult try_load_site(const SiteDocument& doc) {
  LoadResult out;
  auto stage = [&](std::string name, ValidationReport r) {
    bool ok = r.passed();
    out.stages.push_back({std::move(name), std::move(r)});
    return ok;
  };
  auto fail = [&](std::string name, std::string law, std::string witness) {
    out.stages.push_back({std::move(name), ValidationReport::fail(std::move(law), std::move(witness))});
    return out;
  };

  Site site;
  site.document = doc;
  site.digest = site_digest(doc);

  // category
  ValidationReport names = check_names(doc);
  if (!names) return fail("category", names.law, names.violation);
  CategoryBuilder builder;
  for (const std::string& x : doc.objects) builder.object(x);
  for (const MorphismDecl& m : doc.morphisms) builder.morphism(m.name, m.dom, m.cod);
  for (const auto& [obj, mor] : doc.identities) builder.identity(obj, mor);
  for (const CompositeDecl& c : doc.compose) builder.compose(c.g, c.f, c.h);
  CategoryPtr base;
  try {
    base = builder.build();
  } catch (const Error& e) {
    return fail("category", "compose", e.what());
  }
  if (!stage("category", validate_category(*base))) return out;

  // enrichment
  site.enriched.base = base;
  for (std::size_t i = 0; i < doc.edges.size(); ++i) {
    const auto& [a, b] = doc.edges[i];
    for (const std::string* name : {&a, &b}) {
      if (!base->has_morphism(*name)) {
        return fail("enrichment", "edges[" + std::to_string(i) + "]",
                                                          "unknown morphism " + *name);
      }
    }
    site.enriched.edges.push_back({base->morphism_index(a), base->morphism_index(b)});
  }
  if (!stage("enrichment", validate_enrichment(site.enriched))) return out;
  site.ho = homotopy_category(site.enriched);

  // topology
  GeneratingCovers families(base->num_objects());
  for (const auto& [obj, gens] : doc.topology) {
    if (!base->has_object(obj)) {
      return fail("topology", "topology", "unknown object " + obj);
    }
    ObjectIndex x = base->object_index(obj);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::string key = "topology." + obj + "[" + std::to_string(i) + "]";
      std::vector<MorphismIndex> family;
      for (const std::string& g : gens[i]) {
        if (!base->has_morphism(g)) {
          return fail("topology", key, "unknown morphism " + g);
        }
        MorphismIndex f = base->morphism_index(g);
        if (base->cod(f) != x) {
          return fail("topology", key, "generator " + g +
                                                                   " does not land in " + obj);
        }
        family.push_back(f);
      }
      families[x].push_back(std::move(family));
    }
  }
  site.topology = saturate_topology(base, families);
  if (!stage("topology", validate_topology(site.topology))) return out;

  // presheaves
  for (const auto& [name, decl] : doc.presheaves) {
    const CategoryPtr& over = decl.over_ho ? site.ho.ho : base;
    std::string label = "presheaf " + name;
    PresheafBuilder pb(over);
    for (const auto& [obj, elems] : decl.values) {
      if (!over->has_object(obj)) {
        return fail(label, "presheaves." + name + ".values",
                                                   "unknown object " + obj);
      }
      pb.value(obj, elems);
    }
    for (const auto& [mor, row] : decl.restrict) {
      if (!over->has_morphism(mor)) {
        return fail(label, "presheaves." + name + ".restrict",
                                                   "unknown morphism " + mor);
      }
      pb.restrict(mor, {row.begin(), row.end()});
    }
    SetPresheaf p;
    try {
      p = pb.build();
    } catch (const Error& e) {
      return fail(label, "presheaves." + name, e.what());
    }
    if (!stage(label, validate_presheaf(p, *over))) return out;
    site.presheaves[name] = {share(std::move(p)), decl.over_ho};
  }
  out.site = std::move(site);
  return out;
}

Site load_site(const SiteDocument& doc) {
  LoadResult r = try_load_site(doc);
  if (!r.site) {
    const LoadStage& s = r.stages.back();
    throw LoadError(s.name + ": " + s.report.law + ": " + s.report.violation);
  }
  return std::move(*r.site);
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"A", "B", "C", "D", "E"};
  return names;
}

SiteDocument fixture(std::string_view name) {
  SiteDocument d;
  d.name = std::string(name);
  auto identity_on = [](std::vector<std::string> objects, std::vector<std::string> morphisms,
                        std::vector<std::string> elems) {
    PresheafDecl p;
    for (const auto& x : objects) p.values[x] = elems;
    for (const auto& m : morphisms) {
      for (const auto& e : elems) p.restrict[m][e] = e;
    }
    return p;
  };
  if (name == "A") {
    d.objects = {"p"};
  } else if (name == "B" || name == "C") {
    d.objects = {"x", "y"};
    d.morphisms = {{"f1", "x", "y"}, {"f2", "x", "y"}};
    if (name == "B") d.edges = {{"f1", "f2"}};
    d.topology["y"] = {{"f1", "f2"}};
    d.presheaves["K2"] = identity_on({"x", "y"}, {"f1", "f2"}, {"0", "1"});
    if (name == "B") {
      PresheafDecl g = identity_on({"x", "y"}, {"[f1]"}, {"a", "b"});
      g.over_ho = true;
      d.presheaves["G"] = g;
    }
  } else if (name == "D") {
    d.objects = {"a", "b", "c"};
    d.morphisms = {{"u", "a", "c"}, {"v", "b", "c"}};
    d.topology["c"] = {{"u", "v"}};
    PresheafDecl f;
    f.values = {{"a", {"0", "1"}}, {"b", {"*"}}, {"c", {"*"}}};
    f.restrict = {{"u", {{"*", "0"}}}, {"v", {{"*", "*"}}}};
    d.presheaves["F"] = f;
    PresheafDecl p;
    p.values = {{"a", {"0", "1"}}, {"b", {"0", "1"}}, {"c", {"00", "01", "10", "11"}}};
    for (const std::string& e : p.values["c"]) {
      p.restrict["u"][e] = e.substr(0, 1);
      p.restrict["v"][e] = e.substr(1, 1);
    }
    d.presheaves["P"] = p;
  } else if (name == "E") {
    d.objects = {"z"};
    d.morphisms = {{"h", "z", "z"}};
    d.compose = {{"h", "h", "h"}};
    d.edges = {{"id_z", "h"}};
  } else {
    throw Error("unknown fixture " + std::string(name) + " (expected A, B, C, D or E)");
  }
  return d;
}

}  // namespace sitekit
