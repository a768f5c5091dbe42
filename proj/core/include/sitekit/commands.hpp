#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sitekit/comparison.hpp"
#include "sitekit/report.hpp"

namespace sitekit {

/// One CLI invocation after argument parsing.
struct CommandRequest {
  std::string verb;  // validate, ho, induce, thicken, sheafify, classify, check-lemmas, fixture
  // Where the site comes from; at most one is set.
  std::optional<std::string> site_path;   // the document itself goes in `document`
  std::optional<SiteDocument> document;
  std::optional<std::string> fixture;
  std::optional<std::uint64_t> random_site;
  std::string sieve;     // thicken: "f1,f2@y"
  std::string presheaf;  // sheafify, classify
  std::size_t bound = 2;
  std::uint64_t seed = 7;
  std::optional<std::size_t> random;  // check-lemmas: random sites (200 without a site)
  Fault fault = Fault::none;
  bool timing = false;
  std::size_t workers = 0;  // 0: hardware concurrency
};

inline constexpr std::size_t kDefaultRandomSites = 200;

/// SITEKIT_SEED if set and numeric, else 7.
std::uint64_t default_seed();

/// The verbs run_command understands.
const std::vector<std::string>& command_verbs();

/// Never throws: load errors give exit 1, failed checks exit 2, anything
/// unexpected exit 3, each with the message in `error`.
CheckReport run_command(const CommandRequest& request);

/// Canonical command line for a request, used as the report's replay line.
std::string replay_command(const CommandRequest& request);

}  // namespace sitekit
