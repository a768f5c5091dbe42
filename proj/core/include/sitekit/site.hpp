#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sitekit/enriched.hpp"
#include "sitekit/topology.hpp"

namespace sitekit {

struct MorphismDecl {
  std::string name, dom, cod;
  bool operator==(const MorphismDecl&) const = default;
};

/// g∘f = h
struct CompositeDecl {
  std::string g, f, h;
  bool operator==(const CompositeDecl&) const = default;
};

struct PresheafDecl {
  bool over_ho = false;
  std::map<std::string, std::vector<std::string>> values;
  // morphism -> (element of value(cod) -> element of value(dom))
  std::map<std::string, std::map<std::string, std::string>> restrict;
  bool operator==(const PresheafDecl&) const = default;
};

/// A site file as written: names only, nothing validated yet.
struct SiteDocument {
  std::string name;  // label, not part of the digest
  std::vector<std::string> objects;
  std::vector<MorphismDecl> morphisms;
  std::map<std::string, std::string> identities;  // object -> morphism, optional
  std::vector<CompositeDecl> compose;
  std::vector<std::pair<std::string, std::string>> edges;
  // object -> generator families
  std::map<std::string, std::vector<std::vector<std::string>>> topology;
  std::map<std::string, PresheafDecl> presheaves;
  bool operator==(const SiteDocument&) const = default;
};

/// Throws LoadError naming the offending key on syntax or shape errors.
SiteDocument parse_site(std::string_view text);
SiteDocument site_from_json(const nlohmann::json& j);
nlohmann::json site_to_json(const SiteDocument& doc);
/// Pretty-printed JSON, stable across runs.
std::string serialize_site(const SiteDocument& doc);
/// Sorted copy: reordering declarations does not change it.
SiteDocument canonical_site(const SiteDocument& doc);
/// "sha256:<hex>" over the canonical document.
std::string site_digest(const SiteDocument& doc);
/// "sha256:<hex>" of arbitrary text.
std::string text_digest(std::string_view text);

PresheafDecl presheaf_decl(const SetPresheaf& f, bool over_ho);

struct NamedPresheaf {
  PresheafPtr presheaf;
  bool over_ho = false;
};

/// A loaded and validated site.
struct Site {
  SiteDocument document;
  std::string digest;
  EnrichedCategory enriched;
  HomotopyCategoryData ho;
  GrothendieckTopology topology;
  std::map<std::string, NamedPresheaf> presheaves;

  const CategoryPtr& base() const { return enriched.base; }
  /// The document name, or "site" for unnamed documents.
  std::string label() const { return document.name.empty() ? "site" : document.name; }
};

struct LoadStage {
  std::string name;  // "category", "enrichment", "topology", "presheaf K2"
  ValidationReport report;
};

struct LoadResult {
  std::optional<Site> site;
  std::vector<LoadStage> stages;  // stops after the first failing stage
};

/// Runs every validator in order without throwing.
LoadResult try_load_site(const SiteDocument& doc);
/// Throws LoadError with "<stage>: <law>: <witness>" on the first failure.
Site load_site(const SiteDocument& doc);

/// Built-in sites "A".."E".
const std::vector<std::string>& fixture_names();
/// Throws Error on an unknown name.
SiteDocument fixture(std::string_view name);

}  // namespace sitekit
