#pragma once

// Report rendering. The JSON layout ("report_v1") is documented in
// docs/report_v1.md; key order is fixed so equal reports are equal bytes.

#include <csbf/verify.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>
#include <string>

namespace csbf {

struct RenderOptions {
  bool timing = true;
};

inline nlohmann::ordered_json report_json(const Report& r, const RenderOptions& opt = {}) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "report_v1";
  j["suite"] = r.suite;
  j["algebra"] = r.algebra;
  j["cap"] = r.cap;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["verdict"] = r.pass() ? "PASS" : "FAIL";
  j["passed"] = r.passed();
  j["total"] = r.checks.size();
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json e;
    e["id"] = c.id;
    e["backend"] = c.backend;
    e["verdict"] = c.pass ? "PASS" : "FAIL";
    e["mutant"] = c.mutant;
    e["valid_order"] = c.valid_order ? ordered_json(*c.valid_order) : ordered_json(nullptr);
    e["trials"] = c.trials;
    e["value"] = c.value;
    e["certificate"] = c.certificate.empty() ? ordered_json(nullptr) : ordered_json(c.certificate);
    if (opt.timing) e["wall_ms"] = std::round(c.wall_ms * 1000.0) / 1000.0;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  if (!r.values.empty()) {
    ordered_json values = ordered_json::array();
    for (const auto& v : r.values) values.push_back({{"name", v.name}, {"value", v.value}, {"valid_order", v.valid_order}});
    j["values"] = std::move(values);
  }
  return j;
}

inline std::string render_json(const Report& r, const RenderOptions& opt = {}) {
  return report_json(r, opt).dump(2) + "\n";
}

inline std::string render_text(const Report& r, const RenderOptions& opt = {}) {
  std::ostringstream out;
  out << "suite " << r.suite << "  algebra " << r.algebra << "  cap " << r.cap << "  seed " << r.seed << "  trials "
      << r.trials << "\n";
  for (const auto& v : r.values) out << "  " << v.name << " = " << v.value << "   [valid order " << v.valid_order << "]\n";
  for (const auto& c : r.checks) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << c.backend << "  " << c.id;
    if (c.mutant) out << " (mutant)";
    if (c.valid_order) out << "  order " << *c.valid_order;
    if (!c.value.empty()) out << "  " << c.value;
    if (opt.timing) out << "  " << std::llround(c.wall_ms) << " ms";
    out << "\n";
    if (!c.certificate.empty()) out << "      certificate: " << c.certificate << "\n";
  }
  out << (r.pass() ? "PASS" : "FAIL") << "  " << r.passed() << "/" << r.checks.size() << " checks\n";
  return out.str();
}

}  // namespace csbf
