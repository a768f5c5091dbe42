#include "sitekit/report.hpp"

#include <sstream>

namespace sitekit {

using nlohmann::json;

namespace {

json sieve_json(const FiniteCategory& c, const Sieve& s, bool over_ho) {
  json members = json::array();
  std::vector<std::string> ids;
  for (MorphismIndex f : s.members()) ids.push_back(c.morphism_id(f));
  std::sort(ids.begin(), ids.end());
  for (auto& id : ids) members.push_back(id);
  return {{"over", over_ho ? "ho" : "base"}, {"root", c.object_id(s.root())}, {"members", members}};
}

const char* verdict_text(int code) {
  switch (code) {
    case kExitPass: return "pass";
    case kExitInvalidInput: return "invalid input";
    case kExitViolation: return "violation";
    default: return "internal error";
  }
}

bool is_scalar_list(const json& j) {
  if (!j.is_array()) return false;
  for (const json& x : j) {
    if (x.is_structured()) return false;
  }
  return true;
}

std::string scalar(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(std::ostringstream& out, const json& j, int indent) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        out << pad << k << ": " << scalar(v) << "\n";
      } else if (v.empty()) {
        out << pad << k << ": (none)\n";
      } else if (is_scalar_list(v)) {
        out << pad << k << ":";
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " | " : " ") << scalar(v[i]);
        out << "\n";
      } else {
        out << pad << k << ":\n";
        render(out, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const json& v : j) {
      if (v.is_primitive() || is_scalar_list(v)) {
        out << pad << "- " << (v.is_primitive() ? scalar(v) : v.dump()) << "\n";
      } else {
        out << pad << "-\n";
        render(out, v, indent + 2);
      }
    }
  } else if (!j.is_null()) {
    out << pad << scalar(j) << "\n";
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("report: missing key ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(std::string("report: bad value for ") + key + ": " + e.what());
  }
}

}  // namespace

json counterexample_to_json(const Counterexample& cx, const Site& site) {
  SiteDocument doc = site.document;
  doc.presheaves.clear();
  for (const auto& [name, p] : cx.presheaves) {
    doc.presheaves[name] = presheaf_decl(*p, p->category_ptr() == site.ho.ho);
  }
  json out = {{"description", cx.description}, {"site", site_to_json(doc)}};
  if (!cx.morphisms.empty()) {
    json ms = json::object();
    for (const auto& [name, m] : cx.morphisms) {
      auto name_of = [&](const PresheafPtr& p) {
        for (const auto& [n, q] : cx.presheaves) {
          if (q == p || *q == *p) return n;
        }
        return std::string("?");
      };
      const FiniteCategory& c = m.source->category();
      json components = json::object();
      for (ObjectIndex x = 0; x < c.num_objects(); ++x) {
        json row = json::object();
        for (ElementIndex e = 0; e < m.source->size(x); ++e) {
          row[m.source->element_id(x, e)] = m.target->element_id(x, m.apply(x, e));
        }
        components[c.object_id(x)] = row;
      }
      ms[name] = {{"source", name_of(m.source)}, {"target", name_of(m.target)},
                  {"components", components}};
    }
    out["morphisms"] = ms;
  }
  if (cx.sieve) {
    const FiniteCategory& c = cx.sieve_in_ho ? *site.ho.ho : *site.base();
    out["sieve"] = sieve_json(c, *cx.sieve, cx.sieve_in_ho);
  }
  return out;
}

ReportCheck to_report_check(const CheckOutcome& o, const Site& site) {
  ReportCheck r{site.label(), o.name, o.passed, o.cases, o.detail, std::nullopt};
  if (o.counterexample) r.counterexample = counterexample_to_json(*o.counterexample, site);
  return r;
}

json report_to_json(const CheckReport& r) {
  json checks = json::array();
  for (const ReportCheck& c : r.checks) {
    json j = {{"site", c.site}, {"name", c.name}, {"passed", c.passed}, {"cases", c.cases},
              {"detail", c.detail}};
    if (c.counterexample) j["counterexample"] = *c.counterexample;
    checks.push_back(std::move(j));
  }
  json out = {{"command", r.command}, {"site", r.site},     {"digest", r.digest},
              {"seed", r.seed},       {"bound", r.bound},   {"checks", checks},
              {"output", r.output},   {"error", r.error},   {"replay", r.replay},
              {"exit_code", r.exit_code}, {"verdict", verdict_text(r.exit_code)}};
  if (r.wall_ms) out["wall_ms"] = *r.wall_ms;
  return out;
}

CheckReport report_from_json(const json& j) {
  if (!j.is_object()) throw Error("report: expected an object");
  CheckReport r;
  r.command = field<std::string>(j, "command");
  r.site = field<std::string>(j, "site");
  r.digest = field<std::string>(j, "digest");
  r.seed = field<std::uint64_t>(j, "seed");
  r.bound = field<std::size_t>(j, "bound");
  r.output = j.contains("output") ? j.at("output") : json();
  r.error = field<std::string>(j, "error");
  r.replay = field<std::string>(j, "replay");
  r.exit_code = field<int>(j, "exit_code");
  if (j.contains("wall_ms")) r.wall_ms = field<double>(j, "wall_ms");
  for (const json& c : field<json>(j, "checks")) {
    ReportCheck rc;
    rc.site = field<std::string>(c, "site");
    rc.name = field<std::string>(c, "name");
    rc.passed = field<bool>(c, "passed");
    rc.cases = field<std::size_t>(c, "cases");
    rc.detail = field<std::string>(c, "detail");
    if (c.contains("counterexample")) rc.counterexample = c.at("counterexample");
    r.checks.push_back(std::move(rc));
  }
  return r;
}

std::string emit_report(const CheckReport& r, bool as_json) {
  if (as_json) return report_to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "sitekit " << r.command << "  site=" << r.site << "  digest=" << r.digest
      << "  seed=" << r.seed << "  bound=" << r.bound << "\n";
  std::size_t failed = 0;
  for (const ReportCheck& c : r.checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.site << " " << c.name << " (" << c.cases
        << (c.cases == 1 ? " case)" : " cases)");
    if (!c.detail.empty()) out << " " << c.detail;
    out << "\n";
    if (!c.passed) ++failed;
    if (c.counterexample) {
      out << "    counterexample:\n";
      std::istringstream lines(c.counterexample->dump(2));
      for (std::string line; std::getline(lines, line);) out << "      " << line << "\n";
    }
  }
  render(out, r.output, 0);
  if (!r.error.empty()) out << "error: " << r.error << "\n";
  out << "verdict: " << verdict_text(r.exit_code) << " (" << r.checks.size() << " checks, " << failed
      << " failed)\n";
  if (r.exit_code != kExitPass) out << "replay: " << r.replay << "\n";
  if (r.wall_ms) out << "wall time: " << *r.wall_ms << " ms\n";
  return out.str();
}

}  // namespace sitekit
