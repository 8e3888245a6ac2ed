#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poisext/model.hpp"

namespace poisext {

// One verification check.  Records always carry the measured and the
// expected value next to the tolerance; pass is derived, never stored
// bare.  note holds optional diagnostics (spreads, orders, grid labels).
struct CheckRecord {
  std::string name;
  std::string ref;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_s = 0.0;
  std::string note;
};

// Knobs a run was executed with, stamped into every report.
struct EnvStamp {
  int grid = 0;
  double box = 0.0;
  double quad_tol = 0.0;
  std::uint64_t seed = 0;
};

struct VerificationReport {
  std::string suite;
  ModelParams params;
  EnvStamp env;
  std::vector<CheckRecord> checks;

  bool all_pass() const;
  double total_runtime() const;
};

// Machine form.  Key order is fixed, so two runs with the same config and
// seed serialize byte-identically; per-check runtimes are the one
// wall-clock quantity, drop them with include_runtime = false when
// comparing runs.
std::string report_json(const VerificationReport& rep,
                        bool include_runtime = true);

// Human form: header lines plus an aligned column table.
std::string report_text(const VerificationReport& rep);

// Flat dump for external plotting, one row per check.
std::string report_csv(const VerificationReport& rep);
void write_report_csv(const VerificationReport& rep, const std::string& path);

}  // namespace poisext
