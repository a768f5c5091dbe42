#pragma once

#include <stdexcept>
#include <string>

namespace sitekit {

/// Contract violation on the caller side: unknown ids, category mismatch,
/// malformed input.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A site document that cannot be turned into validated structures.
class LoadError : public Error {
public:
  using Error::Error;
};

/// A mechanically checked statement that should hold for every valid site
/// turned out false. Carries a human-readable witness.
class TheoremViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Result of a validator: empty `violation` means the input passed.
struct ValidationReport {
  std::string law;        // which law failed, e.g. "identity", "associativity"
  std::string violation;  // witness description

  bool passed() const { return violation.empty(); }
  explicit operator bool() const { return passed(); }

  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string law, std::string witness) {
    return {std::move(law), std::move(witness)};
  }
};

}  // namespace sitekit
