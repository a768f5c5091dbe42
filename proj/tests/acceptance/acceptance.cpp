// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit 0 only when
// all pass. Optional argv[1]: path to the sitekit binary, used to replay a
// violation report through the real command line.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "sitekit/commands.hpp"
#include "sitekit/comparison.hpp"
#include "sitekit/enumerate.hpp"
#include "sitekit/random_site.hpp"

using namespace sitekit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && passed) {
      passed = false;
      detail = why;
    }
  }
};

std::vector<Site> g_sites;  // fixtures A-E, then the default random sites
CheckReport g_suite;
double g_suite_seconds = 0;

void load_population() {
  for (const std::string& name : fixture_names()) g_sites.push_back(load_site(fixture(name)));
  for (std::size_t i = 0; i < kDefaultRandomSites; ++i) {
    g_sites.push_back(load_site(random_site(random_site_seed(7, i))));
  }
}

// Aggregates one check name over the suite report.
struct Tally {
  std::size_t sites = 0, failed = 0, cases = 0;
  std::string first_failure;
};

Tally tally(const std::string& name) {
  Tally t;
  for (const ReportCheck& c : g_suite.checks) {
    if (c.name != name) continue;
    ++t.sites;
    t.cases += c.cases;
    if (!c.passed) {
      if (!t.failed) t.first_failure = c.site + ": " + c.detail;
      ++t.failed;
    }
  }
  return t;
}

void require_tally(Verdict& v, const std::string& name) {
  Tally t = tally(name);
  v.require(t.sites == g_sites.size(), name + " ran on " + std::to_string(t.sites) + " sites");
  v.require(t.failed == 0, name + " failed on " + std::to_string(t.failed) + " sites, first " +
                               t.first_failure);
}

bool bijective(const ElementMap& m, std::size_t target) {
  return m.size() == target && std::set<ElementIndex>(m.begin(), m.end()).size() == target;
}

std::vector<PresheafPtr> everything(const CategoryPtr& c, std::size_t bound, bool& complete) {
  bool truncated = false;
  auto out = enumerate_presheaves(c, bound, 1u << 20, &truncated);
  complete = complete && !truncated;
  return out;
}

Verdict c1() {
  Verdict v;
  auto start = Clock::now();
  const Site& b = g_sites[1];
  GrothendieckTopology induced = induced_topology(b.ho, b.topology).induced;
  const FiniteCategory& ho = *b.ho.ho;
  ObjectIndex x = ho.object_index("x"), y = ho.object_index("y");
  MorphismIndex f = ho.hom(x, y)[0];
  bool complete = true;
  auto pop = everything(b.ho.ho, 3, complete);
  std::size_t expected = 0;
  for (std::size_t nx = 0; nx <= 3; ++nx) {
    std::size_t p = 1;
    for (std::size_t ny = 0; ny <= 3; ++ny, p *= nx) expected += p;
  }
  v.require(complete && pop.size() == expected,
            "population has " + std::to_string(pop.size()) + " presheaves, expected " +
                std::to_string(expected));
  oracle::CoverSets covers = oracle::cover_sets(induced);
  std::size_t sheaves = 0;
  for (const PresheafPtr& p : pop) {
    bool sheaf = classify_presheaf(*p, induced).is_sheaf();
    bool iso = p->size(x) == p->size(y) && bijective(p->restriction(f), p->size(x));
    v.require(sheaf == iso, "exception: sizes x=" + std::to_string(p->size(x)) +
                                " y=" + std::to_string(p->size(y)));
    v.require((oracle::classify(*p, covers) == SheafKind::sheaf) == sheaf,
              "brute-force classification disagrees");
    sheaves += sheaf;
  }
  double s = seconds_since(start);
  v.require(s < 5.0, "took " + fixed(s) + " s");
  if (v.passed) {
    v.detail = std::to_string(pop.size()) + " presheaves on Ho(B), " + std::to_string(sheaves) +
               " sheaves, 0 exceptions, " + fixed(s, 3) + " s";
  }
  return v;
}

Verdict c2() {
  Verdict v;
  std::size_t disagreements = 0;
  for (std::size_t i = fixture_names().size(); i < g_sites.size(); ++i) {
    const SiteDocument& d = g_sites[i].document;
    v.require(d.objects.size() <= 4 && d.morphisms.size() <= 8 && d.edges.size() <= 6,
              d.name + " exceeds the size limits");
  }
  require_tally(v, "identification-topologies");
  for (const Site& s : g_sites) {
    InducedTopologyReport r = compute_induced_topology(s.ho, s.topology);
    disagreements += !r.agreement;
  }
  v.require(disagreements == 0, std::to_string(disagreements) + " sites disagree on recomputation");
  v.require(g_suite_seconds < 60, "suite took " + fixed(g_suite_seconds) + " s");
  if (v.passed) {
    v.detail = std::to_string(g_sites.size()) + " sites, 100% agreement, " +
               std::to_string(tally("identification-topologies").cases) + " Ho sieves tested, " +
               fixed(g_suite_seconds) + " s";
  }
  return v;
}

Verdict c3() {
  Verdict v;
  require_tally(v, "compare-sheafifications");
  Tally t = tally("compare-sheafifications");
  v.require(t.cases > 0, "no morphisms sampled");
  if (v.passed) v.detail = std::to_string(t.cases) + " morphisms over " + std::to_string(t.sites) + " sites, 100% agreement";
  return v;
}

Verdict c4() {
  Verdict v;
  require_tally(v, "reflecting-sheaf-condition");
  std::size_t cases = 0;
  bool complete = true;
  for (const Site& s : g_sites) {
    GrothendieckTopology induced = induced_topology(s.ho, s.topology).induced;
    for (const PresheafPtr& f : everything(s.ho.ho, 2, complete)) {
      Classification up = classify_presheaf(*f, induced);
      Classification down = classify_presheaf(gamma_star(s.ho, *f), s.topology);
      cases += 3;
      v.require(!down.is_sheaf() || up.is_sheaf(), s.label() + ": base sheaf, no induced sheaf");
      v.require(!down.is_separated() || up.is_separated(), s.label() + ": separation not reflected");
      v.require(!up.is_separated() || down.is_separated(), s.label() + ": separation not preserved");
    }
  }
  v.require(complete, "enumeration was cut short");

  const Site& b = g_sites[1];
  GrothendieckTopology induced = induced_topology(b.ho, b.topology).induced;
  auto w = find_converse_failure(b.ho, b.topology, induced, everything(b.ho.ho, 2, complete));
  v.require(w.has_value(), "no converse-failure witness on Fixture B");
  if (w) {
    SetPresheaf star = gamma_star(b.ho, *w->presheaf);
    ObjectIndex at = w->pulled_back.witness_object;
    std::size_t families =
        oracle::matching_families(star, w->pulled_back.witness_sieve.members()).size();
    v.require(w->pulled_back.kind == SheafKind::separated, "witness pullback is not separated");
    v.require(star.size(at) == 2 && families == 4,
              "witness has " + std::to_string(star.size(at)) + " sections vs " +
                  std::to_string(families) + " families");
    v.require(oracle::classify(star, oracle::cover_sets(b.topology)) == SheafKind::separated,
              "brute-force classification of the witness disagrees");
    v.require(oracle::classify(*w->presheaf, oracle::cover_sets(induced)) == SheafKind::sheaf,
              "witness is not an induced sheaf by brute force");
  }
  if (v.passed) {
    v.detail = std::to_string(cases) + " implication cases, exhaustive; Fixture B witness: 2 sections vs 4 families";
  }
  return v;
}

Verdict c5() {
  Verdict v;
  require_tally(v, "cover-reflecting");
  require_tally(v, "lower-star-transfer");
  std::size_t sheaves = 0;
  bool complete = true;
  for (const Site& s : g_sites) {
    GrothendieckTopology induced = induced_topology(s.ho, s.topology).induced;
    for (const PresheafPtr& f : everything(s.base(), 2, complete)) {
      if (!classify_presheaf(*f, s.topology).is_sheaf()) continue;
      ++sheaves;
      v.require(classify_presheaf(gamma_lower_star(s.ho, *f), induced).is_sheaf(),
                s.label() + ": pushforward of a sheaf is not an induced sheaf");
    }
  }
  v.require(complete, "enumeration was cut short");
  if (v.passed) {
    v.detail = "covers reflected on all sites; " + std::to_string(sheaves) +
               " enumerated base sheaves pushed forward to induced sheaves";
  }
  return v;
}

Verdict c6() {
  Verdict v;
  require_tally(v, "sheafification");
  std::size_t compared = 0;
  bool complete = true;
  for (const Site& s : g_sites) {
    for (const PresheafPtr& f : everything(s.base(), 2, complete)) {
      PlusConstruction plus = plus_construction(f, s.topology);
      std::string mismatch = oracle::compare_plus(*f, s.topology, plus);
      v.require(mismatch.empty(), s.label() + ": plus construction differs from the colimit: " + mismatch);
      ++compared;
    }
  }
  v.require(complete, "enumeration was cut short");

  auto alpha_count = [&](const Site& s, const char* presheaf, const char* object, std::size_t want) {
    PresheafPtr f = s.presheaves.at(presheaf).presheaf;
    ObjectIndex x = s.base()->object_index(object);
    PlusConstruction once = plus_construction(f, s.topology);
    // brute force: the colimit has `want` classes at x and is already a sheaf
    bool oracle_ok = oracle::compare_plus(*f, s.topology, once).empty() &&
                     oracle::classify(*once.result, oracle::cover_sets(s.topology)) == SheafKind::sheaf;
    std::size_t got = sheafify(f, s.topology).sheaf->size(x);
    v.require(oracle_ok && once.result->size(x) == want && got == want,
              std::string("a(") + presheaf + ")(" + object + ") = " + std::to_string(got) +
                  ", expected " + std::to_string(want));
  };
  alpha_count(g_sites[1], "K2", "y", 4);
  alpha_count(g_sites[3], "F", "c", 2);
  if (v.passed) {
    v.detail = "engine checks on all sites; " + std::to_string(compared) +
               " plus constructions equal the colimit; a(K2)(y) = 4, a(F)(c) = 2";
  }
  return v;
}

Verdict c7() {
  Verdict v;
  require_tally(v, "thickening");
  const Site& b = g_sites[1];
  Sieve t = thicken_sieve(b.ho, parse_sieve(*b.base(), "f1@y"));
  v.require(format_sieve(*b.base(), t) == "{f1, f2}", "thicken({f1}) = " + format_sieve(*b.base(), t));
  if (v.passed) {
    v.detail = std::to_string(tally("thickening").cases) + " covers on all sites; thicken({f1}) = {f1, f2}";
  }
  return v;
}

Verdict c8() {
  Verdict v;
  const Site& c = g_sites[2];
  const FiniteCategory& base = *c.base();
  std::vector<Sieve> sieves;
  for (ObjectIndex x = 0; x < base.num_objects(); ++x) {
    for (const Sieve& s : all_sieves(base, x)) sieves.push_back(s);
  }
  std::set<std::vector<std::vector<Sieve>>> seen;
  v.require(c.ho.gamma_is_bijective(), "gamma is not bijective on Fixture C");
  for (std::size_t bits = 0; bits < (std::size_t{1} << sieves.size()); ++bits) {
    std::vector<std::vector<Sieve>> gens(base.num_objects());
    for (std::size_t i = 0; i < sieves.size(); ++i) {
      if ((bits >> i) & 1) gens[sieves[i].root()].push_back(sieves[i]);
    }
    GrothendieckTopology t = saturate_topology(c.base(), gens);
    if (!seen.insert(t.covers).second) continue;
    InducedTopologyReport r = induced_topology(c.ho, t);
    v.require(matches_under_gamma(c.ho, t, r.induced), "induced topology differs from the input");
  }
  // the same collapse for the discrete enrichment of every base in the population
  for (const Site& s : g_sites) {
    HomotopyCategoryData h = homotopy_category(discrete_enrichment(s.base()));
    v.require(matches_under_gamma(h, s.topology, induced_topology(h, s.topology).induced),
              s.label() + ": discrete enrichment changes the topology");
  }
  if (v.passed) {
    v.detail = std::to_string(seen.size()) + " saturated topologies on Fixture C reproduced; " +
               std::to_string(g_sites.size()) + " discrete enrichments reproduce their topology";
  }
  return v;
}

std::string run_binary(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

Verdict c9(const std::string& binary) {
  Verdict v;
  CommandRequest q;
  q.verb = "check-lemmas";
  q.fixture = "B";
  q.fault = Fault::trivial_induced;
  CheckReport first = run_command(q);
  v.require(first.exit_code == kExitViolation, "fault run did not report a violation");
  std::string text = emit_report(first, true);
  v.require(emit_report(run_command(q), true) == text, "in-process rerun differs");
  v.require(report_from_json(nlohmann::json::parse(text)) == first, "report does not round-trip");

  std::string via_cli = "in-process only";
  if (!binary.empty()) {
    std::string original = run_binary(binary + " check-lemmas --fixture B --inject-fault trivial-induced --json");
    std::string replay = nlohmann::json::parse(original).at("replay").get<std::string>();
    const std::string prefix = "sitekit ";
    v.require(replay.rfind(prefix, 0) == 0, "replay line does not start with the tool name");
    std::string again = run_binary(binary + " " + replay.substr(prefix.size()) + " --json");
    v.require(again == original, "replayed report differs");
    v.require(again == text, "CLI report differs from the in-process report");
    via_cli = "replayed through the CLI";
  }
  v.require(g_suite.exit_code == kExitPass, "default suite did not pass: " + g_suite.error);
  v.require(g_suite_seconds < 60, "default suite took " + fixed(g_suite_seconds) + " s");
  if (v.passed) {
    v.detail = "violation report byte-identical (" + via_cli + "); default suite " +
               std::to_string(g_suite.checks.size()) + " checks in " + fixed(g_suite_seconds) + " s";
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::string binary = argc > 1 ? argv[1] : "";
  auto start = Clock::now();
  load_population();

  CommandRequest suite;
  suite.verb = "check-lemmas";
  suite.seed = 7;
  auto t = Clock::now();
  g_suite = run_command(suite);
  g_suite_seconds = seconds_since(t);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"C1 sheaf condition on Ho(B) is F(y) -> F(x) bijective", c1},
      {"C2 bracket covers equal iso-test covers", c2},
      {"C3 local isos agree before and after pullback", c3},
      {"C4 sheaf condition reflection and converse failure", c4},
      {"C5 cover reflection and pushforward of sheaves", c5},
      {"C6 sheafification engine", c6},
      {"C7 thickening calculus", c7},
      {"C8 discrete control on Fixture C", c8},
      {"C9 determinism and replay", [&] { return c9(binary); }},
  };
  std::size_t failed = 0;
  for (const auto& [title, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.passed;
    std::cout << (v.passed ? "[PASS] " : "[FAIL] ") << title << ": " << v.detail << std::endl;
  }
  std::cout << (failed ? "FAILED " : "PASSED ") << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria in " << fixed(seconds_since(start)) << " s" << std::endl;
  return failed ? 1 : 0;
}
