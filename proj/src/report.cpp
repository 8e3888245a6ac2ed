#include "poisext/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace poisext {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

bool VerificationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

double VerificationReport::total_runtime() const {
  double s = 0.0;
  for (const auto& c : checks) s += c.runtime_s;
  return s;
}

std::string report_json(const VerificationReport& rep, bool include_runtime) {
  nlohmann::ordered_json j;
  j["suite"] = rep.suite;
  j["params"] = {{"field", field_name(rep.params.field)},
                 {"n", rep.params.n},
                 {"a", rep.params.a}};
  j["environment"] = {{"grid", rep.env.grid},
                      {"box", rep.env.box},
                      {"quad_tol", rep.env.quad_tol},
                      {"seed", rep.env.seed}};
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    nlohmann::ordered_json r;
    r["name"] = c.name;
    r["ref"] = c.ref;
    r["measured"] = c.measured;
    r["expected"] = c.expected;
    r["tolerance"] = c.tolerance;
    r["pass"] = c.pass;
    if (include_runtime) r["runtime_s"] = c.runtime_s;
    r["note"] = c.note;
    j["checks"].push_back(std::move(r));
  }
  j["all_pass"] = rep.all_pass();
  return j.dump(2);
}

std::string report_text(const VerificationReport& rep) {
  std::ostringstream out;
  out << "suite: " << rep.suite << "\n";
  out << "params: " << rep.params.describe() << "\n";
  out << "environment: grid=" << rep.env.grid << " box=" << rep.env.box
      << " quad_tol=" << rep.env.quad_tol << " seed=" << rep.env.seed << "\n";

  size_t wname = 5;
  for (const auto& c : rep.checks) wname = std::max(wname, c.name.size());
  auto pad = [](const std::string& s, size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  out << pad("check", wname) << "  " << pad("measured", 13) << pad("expected", 13)
      << pad("tolerance", 11) << pad("pass", 6) << "runtime\n";
  for (const auto& c : rep.checks) {
    out << pad(c.name, wname) << "  " << pad(fmt("%.5g", c.measured), 13)
        << pad(fmt("%.5g", c.expected), 13) << pad(fmt("%.3g", c.tolerance), 11)
        << pad(c.pass ? "yes" : "NO", 6) << fmt("%.2f", c.runtime_s) << "s";
    if (!c.note.empty()) out << "  [" << c.note << "]";
    out << "\n";
  }
  size_t passed = 0;
  for (const auto& c : rep.checks) passed += c.pass ? 1 : 0;
  out << rep.checks.size() << " checks, " << passed << " passed, "
      << (rep.checks.size() - passed) << " failed\n";
  return out.str();
}

std::string report_csv(const VerificationReport& rep) {
  std::ostringstream out;
  out << "suite,name,ref,measured,expected,tolerance,pass,runtime_s,note\n";
  for (const auto& c : rep.checks) {
    out << csv_quote(rep.suite) << ',' << csv_quote(c.name) << ','
        << csv_quote(c.ref) << ',' << fmt("%.17g", c.measured) << ','
        << fmt("%.17g", c.expected) << ',' << fmt("%.17g", c.tolerance) << ','
        << (c.pass ? 1 : 0) << ',' << fmt("%.6f", c.runtime_s) << ','
        << csv_quote(c.note) << "\n";
  }
  return out.str();
}

void write_report_csv(const VerificationReport& rep, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_report_csv: cannot open " + path);
  f << report_csv(rep);
}

}  // namespace poisext
