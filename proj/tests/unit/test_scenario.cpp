#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include "spinlab/checks.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/report_io.hpp"
#include "spinlab/scenario.hpp"

using namespace spinlab;

namespace {

const char* kMinimal = R"({"name": "t", "c1": 1.0, "c2": -0.5,
  "hypersurface": {"key": "round-sphere", "params": {"r": 0.5}}, "samples": 4, "seed": 3})";

Scenario small(const std::string& key = "round-sphere") {
  Scenario s = parse_scenario(kMinimal);
  if (key != "round-sphere") {
    s.hypersurface = key;
    s.params.clear();
  }
  return s;
}

ResidualReport without_runtime(ResidualReport r) {
  r.runtime_seconds = 0.0;
  return r;
}

struct ScopedEnv {
  explicit ScopedEnv(const char* v) { ::setenv("SPINLAB_TOL_SCALE", v, 1); }
  ~ScopedEnv() { ::unsetenv("SPINLAB_TOL_SCALE"); }
};

}  // namespace

TEST(ScenarioParse, DefaultsAndRoundTrip) {
  Scenario s = parse_scenario(kMinimal);
  EXPECT_EQ(s.name, "t");
  EXPECT_EQ(s.pairing, Pairing::AntiFirst);
  EXPECT_EQ(s.samples, 4);
  EXPECT_FALSE(s.checks_given);
  EXPECT_EQ(parse_scenario(scenario_to_json(s)), s);
  s.checks = {"curvature.gauss"};
  s.checks_given = true;
  s.tolerances["curvature.gauss"] = 1e-7;
  s.params["box"] = 0.3;
  EXPECT_EQ(parse_scenario(scenario_to_json(s)), s);
}

TEST(ScenarioParse, RejectsMalformedInput) {
  EXPECT_THROW(parse_scenario("{"), ConfigError);
  EXPECT_THROW(parse_scenario("[]"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"name": "t", "c1": 0, "c2": 0})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"name": "t", "c1": 0, "c2": 0, "hypersurface": {"key": "graph"}, "colour": 1})"),
               ConfigError);
  EXPECT_THROW(parse_scenario(R"({"name": "t", "c1": "x", "c2": 0, "hypersurface": {"key": "graph"}})"),
               ConfigError);
  EXPECT_THROW(
      parse_scenario(R"({"name": "t", "c1": 0, "c2": 0, "hypersurface": {"key": "graph"}, "pairing": "sideways"})"),
      ConfigError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), IoError);
}

TEST(ScenarioValidate, NamesTheOffendingField) {
  auto expect_bad = [](Scenario s, const std::string& fragment) {
    try {
      validate_scenario(s);
      ADD_FAILURE() << "accepted: " << fragment;
    } catch (const ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  Scenario s = small();
  EXPECT_NO_THROW(validate_scenario(s));
  Scenario a = s; a.samples = 0; expect_bad(a, "samples");
  Scenario b = s; b.checks = {"no.such.check"}; b.checks_given = true; expect_bad(b, "no.such.check");
  Scenario c = s; c.tolerances["curvature.gauss"] = -1.0; expect_bad(c, "curvature.gauss");
  Scenario d = s; d.hypersurface = "torus"; expect_bad(d, "torus");
  Scenario e = s; e.c1 = std::numeric_limits<double>::infinity(); expect_bad(e, "c1");
  Scenario f = s; f.checks = {"curvature.gauss", "curvature.gauss"}; f.checks_given = true; expect_bad(f, "curvature.gauss");
  Scenario g = s; g.name.clear(); expect_bad(g, "name");
}

TEST(ScenarioRun, BuiltinCatalogPasses) {
  auto reports = run_catalog(std::nullopt, 1);
  EXPECT_EQ(reports.size(), builtin_scenarios().size());
  for (const auto& r : reports) {
    EXPECT_EQ(r.overall, Verdict::Pass) << r.scenario.name;
    for (const auto& c : r.checks)
      if (c.verdict == Verdict::Fail) ADD_FAILURE() << r.scenario.name << " " << c.id << " " << c.max_residual;
  }
  EXPECT_EQ(exit_code(reports), 0);
}

TEST(ScenarioRun, FlippedPairingFailsOnlyStructureTwoChecks) {
  const std::set<std::string> expected = {"spinc.algebraic", "spinc.phi_identities", "spinc.omega",
                                          "system.two",      "forward.algebraic",    "forward.omega"};
  std::set<std::string> failing;
  for (const auto& r : run_catalog(Pairing::AntiSecond, 1))
    for (const auto& c : r.checks)
      if (c.verdict == Verdict::Fail) failing.insert(c.id);
  EXPECT_EQ(failing, expected);
}

TEST(ScenarioRun, DeterministicAndThreadInvariant) {
  Scenario s = small();
  s.samples = 12;
  ResidualReport a = without_runtime(run_scenario(s, 1));
  ResidualReport b = without_runtime(run_scenario(s, 1));
  ResidualReport c = without_runtime(run_scenario(s, 4));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(emit_report(a, ReportFormat::Json), emit_report(c, ReportFormat::Json));
  s.seed = 4;
  EXPECT_NE(without_runtime(run_scenario(s, 1)), a);
}

TEST(ScenarioRun, EmptyCheckListWarnsAndPasses) {
  Scenario s = small();
  s.checks.clear();
  s.checks_given = true;
  ResidualReport r = run_scenario(s, 1);
  EXPECT_TRUE(r.checks.empty());
  EXPECT_EQ(r.overall, Verdict::Pass);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(exit_code({r}), 0);
}

TEST(ScenarioRun, UnattainableToleranceFails) {
  Scenario s = small();
  s.checks = {"curvature.gauss", "curvature.codazzi"};
  s.checks_given = true;
  s.tolerances["curvature.gauss"] = 1e-20;
  ResidualReport r = run_scenario(s, 1);
  EXPECT_EQ(r.find("curvature.gauss")->verdict, Verdict::Fail);
  EXPECT_EQ(r.find("curvature.codazzi")->verdict, Verdict::Pass);
  EXPECT_EQ(r.overall, Verdict::Fail);
  EXPECT_EQ(exit_code({r}), 1);
}

TEST(ScenarioRun, RoundSphereReportsMeanCurvaturePerPoint) {
  Scenario s = small();
  s.c1 = s.c2 = 0.0;
  s.params["r"] = 1.0;
  ResidualReport r = run_scenario(s, 1);
  const CheckRecord* c = r.find("shape.operator");
  ASSERT_NE(c, nullptr);
  ASSERT_EQ(c->per_point.size(), 4u);
  for (double H : c->per_point) EXPECT_NEAR(H, 1.0, 1e-12);
}

TEST(ToleranceScale, EnvironmentMultipliesTolerances) {
  const double base = effective_tolerance("curvature.gauss");
  {
    ScopedEnv env("10");
    EXPECT_DOUBLE_EQ(effective_tolerance("curvature.gauss"), 10 * base);
    ResidualReport r = run_scenario(small(), 1);
    EXPECT_FALSE(r.warnings.empty());
  }
  {
    ScopedEnv env("abc");
    EXPECT_THROW(tolerance_scale(), ConfigError);
    EXPECT_THROW(validate_scenario(small()), ConfigError);
  }
  {
    ScopedEnv env("-1");
    EXPECT_THROW(tolerance_scale(), ConfigError);
  }
}

TEST(ReportIo, JsonRoundTrip) {
  Scenario s = small();
  s.tolerances["curvature.gauss"] = 1e-20;
  ResidualReport r = run_scenario(s, 1);
  EXPECT_EQ(report_from_json(emit_report(r, ReportFormat::Json)), r);
  Scenario flat = small("flat-hyperplane");
  flat.c1 = flat.c2 = 0.0;
  auto rs = std::vector<ResidualReport>{r, run_scenario(flat, 1)};
  EXPECT_EQ(reports_from_json(emit_reports(rs, ReportFormat::Json)), rs);
}

TEST(ReportIo, NonFiniteResidualsSurviveJson) {
  ResidualReport r;
  r.scenario = small();
  CheckRecord c = make_record("curvature.gauss");
  c.add(std::numeric_limits<double>::quiet_NaN());
  c.finalize();
  r.checks.push_back(c);
  r.finalize();
  EXPECT_EQ(r.overall, Verdict::Fail);
  ResidualReport back = report_from_json(emit_report(r, ReportFormat::Json));
  EXPECT_TRUE(std::isinf(back.checks[0].max_residual));
}

TEST(ReportIo, CsvHasOneRowPerCheck) {
  ResidualReport r = run_scenario(small(), 1);
  std::istringstream in(emit_report(r, ReportFormat::Csv));
  std::string line;
  int rows = 0;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("scenario,check,verdict,max_residual,tolerance", 0), 0u);
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  EXPECT_EQ(rows, static_cast<int>(r.checks.size()));
}

TEST(ReportIo, TextNamesTheAnchorOfFailingChecks) {
  Scenario s = small();
  s.tolerances["curvature.gauss"] = 1e-20;
  ResidualReport r = run_scenario(s, 1);
  std::string text = emit_report(r, ReportFormat::Text);
  EXPECT_NE(text.find(check_info("curvature.gauss").anchor), std::string::npos);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
}

TEST(ReportIo, FormatParsingAndOutput) {
  EXPECT_EQ(parse_format("csv"), ReportFormat::Csv);
  EXPECT_THROW(parse_format("xml"), ConfigError);
  EXPECT_THROW(write_output("/nonexistent-dir/out.json", "x"), IoError);
}
