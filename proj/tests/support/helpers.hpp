#pragma once

#include <map>
#include <string>

#include "sitekit/site.hpp"

namespace testing_support {

/// Loaded once per process.
inline const sitekit::Site& fixture_site(const std::string& name) {
  static std::map<std::string, sitekit::Site> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, sitekit::load_site(sitekit::fixture(name))).first;
  return it->second;
}

inline sitekit::PresheafPtr named(const sitekit::Site& site, const std::string& name) {
  return site.presheaves.at(name).presheaf;
}

}  // namespace testing_support
