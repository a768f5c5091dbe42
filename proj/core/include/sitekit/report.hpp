#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sitekit/induced.hpp"
#include "sitekit/site.hpp"

namespace sitekit {

enum ExitCode : int { kExitPass = 0, kExitInvalidInput = 1, kExitViolation = 2, kExitInternal = 3 };

struct ReportCheck {
  std::string site;
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;
  // {"description", "site": site document with the witnessing presheaves,
  //  "morphisms", "sieve"}; present only on failures
  std::optional<nlohmann::json> counterexample;
  bool operator==(const ReportCheck&) const = default;
};

struct CheckReport {
  std::string command;
  std::string site;    // label; "suite" when several sites were checked
  std::string digest;  // site digest, or a digest over all site digests
  std::uint64_t seed = 0;
  std::size_t bound = 0;
  std::vector<ReportCheck> checks;
  nlohmann::json output;  // command-specific payload
  std::string error;      // set for invalid input and internal errors
  std::string replay;     // command line reproducing this report
  int exit_code = kExitPass;
  std::optional<double> wall_ms;  // only when timing was requested
  bool operator==(const CheckReport&) const = default;
};

/// Serializes a counterexample as a site fragment: the site's document with
/// its presheaves replaced by the witnessing ones.
nlohmann::json counterexample_to_json(const Counterexample& cx, const Site& site);

ReportCheck to_report_check(const CheckOutcome& outcome, const Site& site);

nlohmann::json report_to_json(const CheckReport& r);
/// Throws Error on schema mismatch.
CheckReport report_from_json(const nlohmann::json& j);

/// Table text by default, the JSON schema with `json`.
std::string emit_report(const CheckReport& r, bool json);

}  // namespace sitekit
