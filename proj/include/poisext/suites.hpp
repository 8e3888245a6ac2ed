#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poisext/report.hpp"

namespace poisext {

// Shared knobs of the verification suites.  Zeros and cleared flags mean
// "use the per-suite defaults"; the CLI forwards only what the user gave.
// n and a override the free parameters of a suite where it admits them;
// checks whose parameters are part of the claim keep their own values.
struct SuiteConfig {
  bool has_n = false;
  int n = 0;
  bool has_a = false;
  double a = 0.0;
  int grid = 0;        // points per axis for the grid-based checks
  double box = 0.0;    // half width of the grid box
  double tol = 0.0;    // quadrature absolute tolerance override
  std::uint64_t seed = 8675309;
  // Restrict mixed suites to one field model (verify euclid / verify heis).
  bool run_real = true;
  bool run_heis = true;
};

// Suite names in the order the acceptance gate runs them.
std::vector<std::string> suite_names();

// Whether the suite exercises the given field model at all.
bool suite_covers(const std::string& name, Field field);

// Run one suite.  Unknown names and out-of-range parameter overrides throw
// std::invalid_argument; tolerance misses become failed records instead.
VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace poisext
