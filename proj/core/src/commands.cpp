#include "sitekit/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>

#include "sitekit/random_site.hpp"

namespace sitekit {

using nlohmann::json;

namespace {

/// Failed checks of a single-site command become exit 2.
void finish(CheckReport& r) {
  if (r.exit_code != kExitPass) return;
  for (const ReportCheck& c : r.checks) {
    if (!c.passed) r.exit_code = kExitViolation;
  }
}

ReportCheck simple_check(const Site& site, std::string name, std::size_t cases, std::string failure) {
  ReportCheck c;
  c.site = site.label();
  c.name = std::move(name);
  c.cases = cases;
  c.passed = failure.empty();
  c.detail = std::move(failure);
  return c;
}

std::vector<std::string> sorted_covers(const FiniteCategory& c, const std::vector<Sieve>& covers) {
  std::vector<std::pair<std::size_t, std::string>> keyed;
  for (const Sieve& s : covers) keyed.push_back({s.size(), describe_sieve(c, s)});
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  for (auto& [size, text] : keyed) out.push_back(std::move(text));
  return out;
}

json element_map_json(const PresheafMorphism& m) {
  const FiniteCategory& c = m.source->category();
  json out = json::object();
  for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
    json row = json::object();
    for (ElementIndex e = 0; e < m.source->size(x); ++e) {
      row[m.source->element_id(x, e)] = m.target->element_id(x, m.apply(x, e));
    }
    out[c.object_id(x)] = row;
  }
  return out;
}

json values_json(const SetPresheaf& p) {
  json out = json::object();
  for (ObjectIndex x = 0; x < p.category().num_objects(); ++x) {
    out[p.category().object_id(x)] = p.value(x);
  }
  return out;
}

const NamedPresheaf& named_presheaf(const Site& site, const std::string& name) {
  if (name.empty()) throw LoadError("--presheaf is required");
  auto it = site.presheaves.find(name);
  if (it == site.presheaves.end()) throw LoadError("presheaves: unknown presheaf " + name);
  return it->second;
}

void run_validate(const SiteDocument& doc, CheckReport& r) {
  LoadResult loaded = try_load_site(doc);
  for (const LoadStage& s : loaded.stages) {
    ReportCheck c;
    c.site = doc.name.empty() ? "site" : doc.name;
    c.name = s.name;
    c.cases = 1;
    c.passed = s.report.passed();
    if (!c.passed) c.detail = s.report.law + ": " + s.report.violation;
    r.checks.push_back(std::move(c));
  }
  if (!loaded.site) {
    r.exit_code = kExitInvalidInput;
    r.error = "site does not validate";
    return;
  }
  const Site& site = *loaded.site;
  std::size_t covers = 0;
  for (const auto& cs : site.topology.covers) covers += cs.size();
  r.output = {{"objects", site.base()->num_objects()},
              {"morphisms", site.base()->num_morphisms()},
              {"edges", site.enriched.edges.size()},
              {"covers", covers},
              {"presheaves", site.presheaves.size()}};
}

void run_ho(const Site& site, CheckReport& r) {
  const HomotopyCategoryData& h = site.ho;
  const FiniteCategory& c = *h.base;
  const FiniteCategory& ho = *h.ho;
  std::string failure;
  std::size_t cases = 0;
  for (ObjectIndex x = 0; x < c.num_objects() && failure.empty(); ++x) {
    ++cases;
    if (h.gamma[c.identity(x)] != ho.identity(x)) failure = "identity of " + c.object_id(x) + " not preserved";
  }
  for (MorphismIndex g = 0; g < c.num_morphisms() && failure.empty(); ++g) {
    for (MorphismIndex f : c.morphisms_into(c.dom(g))) {
      ++cases;
      if (h.gamma[c.compose(g, f)] != ho.compose(h.gamma[g], h.gamma[f])) {
        failure = "composite " + c.morphism_id(g) + "\xe2\x88\x98" + c.morphism_id(f) + " not preserved";
        break;
      }
    }
  }
  r.checks.push_back(simple_check(site, "localization-functor", cases, failure));

  json homs = json::array();
  for (ObjectIndex v = 0; v < ho.num_objects(); ++v) {
    for (ObjectIndex x = 0; x < ho.num_objects(); ++x) {
      if (ho.hom(v, x).empty()) continue;
      json classes = json::object();
      for (MorphismIndex m : ho.hom(v, x)) {
        std::vector<std::string> members;
        for (MorphismIndex f : h.fiber[m]) members.push_back(c.morphism_id(f));
        std::sort(members.begin(), members.end());
        classes[ho.morphism_id(m)] = members;
      }
      homs.push_back({{"dom", ho.object_id(v)}, {"cod", ho.object_id(x)}, {"classes", classes}});
    }
  }
  json compose = json::object();
  for (MorphismIndex g = 0; g < ho.num_morphisms(); ++g) {
    if (ho.is_identity(g)) continue;
    for (MorphismIndex f : ho.morphisms_into(ho.dom(g))) {
      if (ho.is_identity(f)) continue;
      compose[ho.morphism_id(g) + "\xe2\x88\x98" + ho.morphism_id(f)] =
          ho.morphism_id(ho.compose(g, f));
    }
  }
  r.output = {{"objects", ho.objects()}, {"hom", homs}, {"compose", compose}};
}

void run_induce(const Site& site, CheckReport& r) {
  InducedTopologyReport rep = compute_induced_topology(site.ho, site.topology);
  const FiniteCategory& ho = *site.ho.ho;
  std::string disagreement;
  if (!rep.agreement) {
    disagreement = "bracket covers and iso-test covers differ at " + format_sieve(ho, *rep.witness) +
                   " on " + ho.object_id(rep.witness->root());
  }
  std::size_t sieves = 0;
  for (ObjectIndex x = 0; x < ho.num_objects(); ++x) sieves += all_sieves(ho, x).size();
  r.checks.push_back(simple_check(site, "identification-topologies", sieves, disagreement));
  r.checks.push_back(simple_check(
      site, "topology-axioms", 1,
      rep.validation ? "" : rep.validation.law + ": " + rep.validation.violation));
  r.checks.push_back(to_report_check(check_cover_reflecting(site.ho, site.topology, rep.induced), site));

  json covers = json::object();
  for (ObjectIndex x = 0; x < ho.num_objects(); ++x) {
    covers[ho.object_id(x)] = sorted_covers(ho, rep.induced.covers[x]);
  }
  r.output = {{"agreement", rep.agreement}, {"covers", covers}};
}

void run_thicken(const Site& site, const std::string& text, CheckReport& r) {
  if (text.empty()) throw LoadError("--sieve is required");
  Sieve j;
  try {
    j = parse_sieve(*site.base(), text);
  } catch (const Error& e) {
    throw LoadError(std::string("--sieve: ") + e.what());
  }
  const HomotopyCategoryData& h = site.ho;
  Sieve thick = thicken_sieve(h, j);
  Sieve bracket = bracket_sieve(h, j);
  std::string failure;
  if (!j.subset_of(thick)) failure = "sieve is not contained in its thickening";
  else if (!(thicken_sieve(h, thick) == thick)) failure = "thickening is not idempotent";
  else if (!(bracket_sieve(h, thick) == bracket)) failure = "bracket changes under thickening";
  r.checks.push_back(simple_check(site, "thickening", 1, failure));
  r.output = {{"sieve", format_sieve(*site.base(), j)},
              {"root", site.base()->object_id(j.root())},
              {"thickened", format_sieve(*site.base(), thick)},
              {"bracket", describe_sieve(*h.ho, bracket)},
              {"covering", site.topology.is_covering(j)},
              {"thickened_covering", site.topology.is_covering(thick)}};
}

void run_sheafify(const Site& site, const std::string& name, CheckReport& r) {
  const NamedPresheaf& p = named_presheaf(site, name);
  GrothendieckTopology t =
      p.over_ho ? induced_topology(site.ho, site.topology).induced : site.topology;
  SheafificationResult s = sheafify(p.presheaf, t);
  SheafificationResult again = sheafify(s.sheaf, t);
  Classification k = classify_presheaf(*s.sheaf, t);
  r.checks.push_back(
      simple_check(site, "result-is-sheaf", 1, k.is_sheaf() ? "" : std::string("result is ") + to_string(k.kind)));
  r.checks.push_back(simple_check(site, "unit-local-iso", 1,
                                  is_tau_iso(s.unit, s, again) ? "" : "unit is not a local isomorphism"));
  r.output = {{"presheaf", name},
              {"topology", p.over_ho ? "induced" : "base"},
              {"values", values_json(*s.sheaf)},
              {"unit", element_map_json(s.unit)}};
}

void run_classify(const Site& site, const std::string& name, CheckReport& r) {
  const NamedPresheaf& p = named_presheaf(site, name);
  GrothendieckTopology t =
      p.over_ho ? induced_topology(site.ho, site.topology).induced : site.topology;
  Classification k = classify_presheaf(*p.presheaf, t);
  const FiniteCategory& c = p.presheaf->category();
  r.output = {{"presheaf", name}, {"topology", p.over_ho ? "induced" : "base"}, {"kind", to_string(k.kind)}};
  if (k.witness_object != kNone) {
    r.output["witness"] = {{"object", c.object_id(k.witness_object)},
                           {"sieve", format_sieve(c, k.witness_sieve)},
                           {"sections", k.sections},
                           {"families", k.families}};
  }
}

struct LoadedSites {
  std::vector<Site> sites;
  std::string label;
  std::string digest;
  std::size_t random = 0;
};

constexpr const char* kNoSite = "no site given (use --site, --fixture or --random-site)";

bool has_site(const CommandRequest& q) { return q.document || q.fixture || q.random_site; }

SiteDocument requested_document(const CommandRequest& q) {
  if (q.document) return *q.document;
  if (q.fixture) return fixture(*q.fixture);
  if (q.random_site) return random_site(*q.random_site);
  throw LoadError(kNoSite);
}

LoadedSites resolve_sites(const CommandRequest& q) {
  LoadedSites out;
  if (has_site(q)) out.sites.push_back(load_site(requested_document(q)));
  bool explicit_site = !out.sites.empty();
  if (q.verb == "check-lemmas") {
    if (!explicit_site) {
      for (const std::string& name : fixture_names()) out.sites.push_back(load_site(fixture(name)));
    }
    out.random = q.random.value_or(explicit_site ? 0 : kDefaultRandomSites);
    for (std::size_t i = 0; i < out.random; ++i) {
      out.sites.push_back(load_site(random_site(random_site_seed(q.seed, i))));
    }
  }
  if (out.sites.empty()) throw LoadError(kNoSite);
  if (out.sites.size() == 1) {
    out.label = out.sites[0].label();
    out.digest = out.sites[0].digest;
  } else {
    out.label = "suite";
    std::string all;
    for (const Site& s : out.sites) all += s.digest + "\n";
    out.digest = text_digest(all);
  }
  return out;
}

void run_check_lemmas(const CommandRequest& q, const LoadedSites& loaded, CheckReport& r) {
  LemmaBounds bounds;
  bounds.bound = q.bound;
  bounds.seed = q.seed;
  std::vector<const Site*> ptrs;
  for (const Site& s : loaded.sites) ptrs.push_back(&s);
  std::vector<SiteCheck> results = check_sites(ptrs, bounds, q.fault, q.workers);
  std::size_t failed_sites = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    failed_sites += !results[i].passed();
    for (const CheckOutcome& o : results[i].outcomes) {
      r.checks.push_back(to_report_check(o, loaded.sites[i]));
    }
  }
  r.output = {{"sites", loaded.sites.size()},
              {"random_sites", loaded.random},
              {"failed_sites", failed_sites},
              {"max_presheaves", bounds.max_presheaves},
              {"max_pairs", bounds.max_pairs},
              {"max_morphisms_per_pair", bounds.max_morphisms_per_pair}};
}

std::string quote(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t'\"\\$") == std::string::npos) return s;
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SITEKIT_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 7;
}

const std::vector<std::string>& command_verbs() {
  static const std::vector<std::string> verbs{"validate", "ho",       "induce",       "thicken",
                                              "sheafify", "classify", "check-lemmas", "fixture"};
  return verbs;
}

std::string replay_command(const CommandRequest& q) {
  std::string out = "sitekit " + q.verb;
  if (q.site_path) out += " --site " + quote(*q.site_path);
  if (q.fixture) out += " --fixture " + quote(*q.fixture);
  if (q.random_site) out += " --random-site " + std::to_string(*q.random_site);
  if (!q.sieve.empty()) out += " --sieve " + quote(q.sieve);
  if (!q.presheaf.empty()) out += " --presheaf " + quote(q.presheaf);
  out += " --bound " + std::to_string(q.bound) + " --seed " + std::to_string(q.seed);
  if (q.random) out += " --random " + std::to_string(*q.random);
  if (q.fault == Fault::trivial_induced) out += " --inject-fault trivial-induced";
  return out;
}

CheckReport run_command(const CommandRequest& q) {
  auto start = std::chrono::steady_clock::now();
  CheckReport r;
  r.command = q.verb;
  r.seed = q.seed;
  r.bound = q.bound;
  r.replay = replay_command(q);
  r.output = json::object();
  try {
    if (std::find(command_verbs().begin(), command_verbs().end(), q.verb) == command_verbs().end()) {
      throw LoadError("unknown command " + q.verb);
    }
    if (q.verb == "fixture") {
      if (!q.fixture) throw LoadError("fixture needs a name (A, B, C, D or E)");
      SiteDocument doc = fixture(*q.fixture);
      r.site = doc.name;
      r.digest = site_digest(doc);
      r.output = site_to_json(doc);
    } else if (q.verb == "validate") {
      SiteDocument doc = requested_document(q);
      r.site = doc.name.empty() ? "site" : doc.name;
      r.digest = site_digest(doc);
      run_validate(doc, r);
    } else {
      LoadedSites loaded = resolve_sites(q);
      r.site = loaded.label;
      r.digest = loaded.digest;
      const Site& site = loaded.sites.front();
      if (q.verb == "ho") run_ho(site, r);
      else if (q.verb == "induce") run_induce(site, r);
      else if (q.verb == "thicken") run_thicken(site, q.sieve, r);
      else if (q.verb == "sheafify") run_sheafify(site, q.presheaf, r);
      else if (q.verb == "classify") run_classify(site, q.presheaf, r);
      else run_check_lemmas(q, loaded, r);
    }
    finish(r);
  } catch (const TheoremViolation& e) {
    r.exit_code = kExitViolation;
    r.error = e.what();
  } catch (const Error& e) {
    r.exit_code = kExitInvalidInput;
    r.error = e.what();
  } catch (const std::exception& e) {
    r.exit_code = kExitInternal;
    r.error = std::string("internal error: ") + e.what();
  }
  if (q.timing) {
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

}  // namespace sitekit
