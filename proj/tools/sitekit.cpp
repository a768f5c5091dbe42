#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sitekit/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sitekit::LoadError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "sitekit: cannot write " << path << "\n";
    return sitekit::kExitInternal;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite sites: Grothendieck topologies, sheafification, homotopy categories and "
               "the induced topology on Ho(C)."};
  app.require_subcommand(1);

  sitekit::CommandRequest request;
  request.seed = sitekit::default_seed();
  std::string site_path, fixture_name, out_path, fault = "none";
  bool as_json = false;

  auto add_site_options = [&](CLI::App* cmd) {
    auto* site = cmd->add_option("--site", site_path, "Site file (JSON)");
    auto* fix = cmd->add_option("--fixture", fixture_name, "Built-in site A, B, C, D or E");
    auto* rnd = cmd->add_option("--random-site", request.random_site, "Random site drawn from this seed");
    site->excludes(fix)->excludes(rnd);
    fix->excludes(rnd);
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--bound", request.bound, "Presheaf value cardinality bound")
        ->capture_default_str();
    cmd->add_option("--seed", request.seed, "Seed (default from SITEKIT_SEED, else 7)")
        ->capture_default_str();
    cmd->add_flag("--json", as_json, "Emit the JSON report");
    cmd->add_flag("--timing", request.timing, "Include wall time in the report");
    cmd->add_option("--out", out_path, "Write to this file instead of stdout");
  };

  std::vector<std::pair<std::string, std::string>> verbs{
      {"validate", "Check category, enrichment, topology and presheaves"},
      {"ho", "Print Ho(C) and check the localization functor"},
      {"induce", "Compute the induced topology on Ho(C) both ways"},
      {"thicken", "Thicken a sieve (--sieve f1,f2@y)"},
      {"sheafify", "Sheafify a named presheaf (--presheaf NAME)"},
      {"classify", "Classify a named presheaf as sheaf / separated / neither"},
      {"check-lemmas", "Run the comparison suite (fixtures A-E and 200 random sites by default)"},
  };
  for (const auto& [verb, help] : verbs) {
    CLI::App* cmd = app.add_subcommand(verb, help);
    add_site_options(cmd);
    add_common(cmd);
    if (verb == "thicken") cmd->add_option("--sieve", request.sieve, "Generators at an object")->required();
    if (verb == "sheafify" || verb == "classify") {
      cmd->add_option("--presheaf", request.presheaf, "Presheaf name in the site file")->required();
    }
    if (verb == "check-lemmas") {
      cmd->add_option("--random", request.random, "Number of random sites (200 without a site)");
      cmd->add_option("--workers", request.workers, "Worker threads (0: one per core)");
      cmd->add_option("--inject-fault", fault, "Corrupt the run to exercise the failure path")
          ->check(CLI::IsMember({"none", "trivial-induced"}));
    }
  }
  CLI::App* fix_cmd = app.add_subcommand("fixture", "Write a built-in site file");
  fix_cmd->add_option("name", fixture_name, "A, B, C, D or E")->required();
  fix_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? sitekit::kExitPass : sitekit::kExitInvalidInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  request.verb = chosen->get_name();
  if (!fixture_name.empty()) request.fixture = fixture_name;
  if (fault == "trivial-induced") request.fault = sitekit::Fault::trivial_induced;

  if (request.verb == "fixture") {
    try {
      return write_output(sitekit::serialize_site(sitekit::fixture(fixture_name)), out_path);
    } catch (const sitekit::Error& e) {
      std::cerr << "sitekit: " << e.what() << "\n";
      return sitekit::kExitInvalidInput;
    }
  }

  sitekit::CheckReport report;
  bool loaded = true;
  if (!site_path.empty()) {
    request.site_path = site_path;
    try {
      request.document = sitekit::parse_site(read_file(site_path));
    } catch (const sitekit::Error& e) {
      loaded = false;
      report.command = request.verb;
      report.site = site_path;
      report.seed = request.seed;
      report.bound = request.bound;
      report.output = nlohmann::json::object();
      report.exit_code = sitekit::kExitInvalidInput;
      report.error = e.what();
      report.replay = sitekit::replay_command(request);
    }
  }
  if (loaded) report = sitekit::run_command(request);
  int status = write_output(sitekit::emit_report(report, as_json), out_path);
  return status ? status : report.exit_code;
}
