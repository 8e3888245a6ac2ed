#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "poisext/report.hpp"

using namespace poisext;

namespace {

VerificationReport sample(double runtime) {
  VerificationReport rep;
  rep.suite = "series";
  rep.params = ModelParams(Field::heisenberg, 2, -2.0);
  rep.env = EnvStamp{17, 1.2, 1e-8, 20201105ull};
  rep.checks.push_back(CheckRecord{"recursion residual", "series/recursion",
                                   3.1e-14, 0.0, 1e-12, true, runtime, "M=200"});
  rep.checks.push_back(CheckRecord{"partial trace, k=0", "series/partial-trace",
                                   1.5, 1.5, 1e-10, true, runtime * 2, ""});
  return rep;
}

}  // namespace

TEST_CASE("report aggregates and serializes") {
  VerificationReport rep = sample(0.25);
  CHECK(rep.all_pass());
  CHECK(rep.total_runtime() == doctest::Approx(0.75));

  auto j = nlohmann::json::parse(report_json(rep));
  CHECK(j["suite"] == "series");
  CHECK(j["params"]["field"] == "heisenberg");
  CHECK(j["params"]["n"] == 2);
  CHECK(j["params"]["a"] == -2.0);
  CHECK(j["environment"]["seed"] == 20201105ull);
  CHECK(j["checks"].size() == 2);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("measured"));
    CHECK(c.contains("expected"));
    CHECK(c.contains("tolerance"));
    CHECK(c.contains("runtime_s"));
  }
  CHECK(j["checks"][0]["measured"] == 3.1e-14);
  CHECK(j["checks"][1]["expected"] == 1.5);
  CHECK(j["all_pass"] == true);

  rep.checks[1].pass = false;
  CHECK_FALSE(rep.all_pass());
  auto j2 = nlohmann::json::parse(report_json(rep));
  CHECK(j2["all_pass"] == false);
}

TEST_CASE("reports are deterministic modulo runtimes") {
  VerificationReport a = sample(0.10);
  VerificationReport b = sample(7.75);
  CHECK(report_json(a, false) == report_json(b, false));
  CHECK(report_json(a, true) != report_json(b, true));
  CHECK(report_json(a, false).find("runtime") == std::string::npos);
}

TEST_CASE("text table aligns and flags failures") {
  VerificationReport rep = sample(0.25);
  rep.checks[0].pass = false;
  std::string txt = report_text(rep);
  CHECK(txt.find("suite: series") != std::string::npos);
  CHECK(txt.find("heisenberg n=2") != std::string::npos);
  CHECK(txt.find("NO") != std::string::npos);
  CHECK(txt.find("[M=200]") != std::string::npos);
  CHECK(txt.find("2 checks, 1 passed, 1 failed") != std::string::npos);
  // the measured column starts at the same offset on every row
  auto header = txt.find("check");
  auto col = txt.find("measured") - txt.rfind('\n', txt.find("measured"));
  (void)header;
  CHECK(col > 0);
}

TEST_CASE("csv round trips values") {
  VerificationReport rep = sample(0.5);
  rep.checks[0].name = "residual, normalized";  // force quoting
  std::string csv = report_csv(rep);
  CHECK(csv.find("\"residual, normalized\"") != std::string::npos);
  CHECK(csv.rfind("suite,name,ref,measured", 0) == 0);

  std::string path = "report_test_tmp.csv";
  write_report_csv(rep, path);
  std::ifstream f(path);
  REQUIRE(f.good());
  std::string line;
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 3);
  f.close();
  std::remove(path.c_str());

  // full-precision doubles survive the dump (%.17g round trips)
  CHECK(csv.find(",3.1e-14,") != std::string::npos);
  CHECK(std::stod("3.1e-14") == 3.1e-14);
}
