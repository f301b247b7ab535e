#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "parageo/errors.hpp"
#include "parageo/report.hpp"
#include "parageo/scenario.hpp"

namespace parageo {
namespace {

// Flat paracosymplectic 3-space; tests splice fields in and out of it.
const char* kFlatConfig = R"({
  "name": "flat",
  "charts": {"P": {"coordinates": ["x", "y", "z"], "domain": [[-1, 1], [-1, 1], [-1, 1]]}},
  "metrics": {"g": {"chart": "P", "components": [["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "1"]],
                    "signature": [2, 1]}},
  "structures": {"P": {"type": "paracontact", "chart": "P", "metric": "g",
                       "phi": [["0", "1", "0"], ["1", "0", "0"], ["0", "0", "0"]],
                       "xi": ["0", "0", "1"], "eta": ["0", "0", "1"], "class": "paracosymplectic"}},
  "samples": 8
})";

std::string with(std::string doc, const std::string& from, const std::string& to) {
  const auto at = doc.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return doc.replace(at, from.size(), to);
}

std::string config_error_path(const std::string& doc) {
  try {
    load_scenario_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(Registry, RequiredEntries) {
  std::vector<std::string> names;
  for (const auto& s : scenario_registry()) names.push_back(s.name);
  for (const char* want : {"paper-4.1", "paper-4.1-as-printed", "flat-para-kahler", "flat-paracosymplectic",
                           "projection-fixture", "identity-M1"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  for (const auto& n : names) EXPECT_NO_THROW(load_scenario(n)) << n;
}

TEST(Registry, ExampleScenario) {
  const Scenario& s = fixture::scenario("paper-4.1");
  ASSERT_TRUE(s.map.has_value());
  EXPECT_EQ(s.map->source, "M1");
  EXPECT_EQ(s.map->target, "M2");
  const Point p(fixture::M1().chart_ptr(), {1.25, -0.5, 0.75});
  const Point q = s.map->map.image(p);
  EXPECT_EQ(std::vector<double>(q.coordinates().begin(), q.coordinates().end()), (std::vector<double>{-0.5, 1.25, 0.75}));
  const Box& box = s.structure("M1").sample_box;
  EXPECT_EQ(box[0].lo, 0.5);
  EXPECT_EQ(box[0].hi, 2.5);
  EXPECT_EQ(box[1].lo, -2.0);
  EXPECT_EQ(box[2].hi, 2.0);
  EXPECT_FALSE(s.structure("M2").notes.empty());
  // Corrected eta2 = v^2 du + dw.
  const Point t(fixture::M2().chart_ptr(), {0, 2, 0});
  EXPECT_EQ(evaluate_tensor(fixture::M2().eta(), t).col(0), Eigen::Vector3d(4, 0, 1));
}

TEST(Registry, AliasAndUnknown) {
  const Scenario s = load_scenario("flat-paracosymplectic-to-parakahler");
  ASSERT_TRUE(s.map.has_value());
  EXPECT_EQ(s.map->kind->tag, MapTag::kContactToHermitian);
  EXPECT_THROW(load_scenario("no-such-scenario"), ConfigError);
}

TEST(Config, LoadsMinimalDocument) {
  const Scenario s = load_scenario_config(kFlatConfig);
  EXPECT_EQ(s.name, "flat");
  EXPECT_EQ(s.samples, 8u);
  EXPECT_EQ(s.structure("P").expected_class, StructureClass::kParacosymplectic);
}

TEST(Config, SchemaErrorsCarryPaths) {
  EXPECT_EQ(config_error_path(with(kFlatConfig, R"([["0", "1", "0"], ["1", "0", "0"], ["0", "0", "0"]])",
                                   R"([["0", "1"], ["1", "0"]])")),
            "/structures/P/phi");
  EXPECT_EQ(config_error_path(with(kFlatConfig, R"("samples": 8)", R"("samples": 8, "color": "red")")), "/color");
  EXPECT_EQ(config_error_path(with(kFlatConfig, R"("samples": 8)", R"("samples": -3)")), "/samples");
  EXPECT_EQ(config_error_path(with(kFlatConfig, R"("type": "paracontact")", R"("type": "kaehler")")),
            "/structures/P/type");
  EXPECT_EQ(config_error_path(with(kFlatConfig, R"("metric": "g")", R"("metric": "h")")), "/structures/P/metric");
  EXPECT_EQ(config_error_path("{not json"), "");
}

TEST(Config, ExpressionErrorLocation) {
  try {
    load_scenario_config(with(kFlatConfig, R"("xi": ["0", "0", "1"])", R"("xi": ["0", "2*/x", "1"])"));
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.path(), "/structures/P/xi/1");
    EXPECT_NE(std::string(e.what()).find("offset 2"), std::string::npos) << e.what();
  }
}

TEST(Config, DomainsMustStayInsideChart) {
  EXPECT_EQ(config_error_path(with(kFlatConfig, R"("samples": 8)", R"("samples": 8, "domains": {"P": [[-2, 0], [0, 1], [0, 1]]})")),
            "/domains/P/0");
}

TEST(Suite, ExampleAllPass) {
  const auto reports = run_suite(fixture::scenario("paper-4.1"));
  EXPECT_FALSE(reports.empty());
  EXPECT_TRUE(std::is_sorted(reports.begin(), reports.end(),
                             [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; }));
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.name << " " << r.max_residual;
  EXPECT_EQ(report_exit_code(reports), 0);
}

TEST(Suite, ExpectedFailureHonored) {
  SuiteOptions o;
  o.checks = std::vector<std::string>{"paracontact-metric"};
  const auto reports = run_suite(fixture::scenario("flat-paracosymplectic"), o);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].name, "P.paracontact-metric");
  EXPECT_FALSE(reports[0].passed);
  EXPECT_TRUE(reports[0].expected_fail);
  EXPECT_EQ(report_exit_code(reports), 0);
}

TEST(Suite, EmptySelection) {
  SuiteOptions o;
  o.checks = std::vector<std::string>{};
  EXPECT_TRUE(run_suite(fixture::scenario("paper-4.1"), o).empty());
}

TEST(Suite, UnknownCheckRejected) {
  SuiteOptions o;
  o.checks = std::vector<std::string>{"curvature"};
  EXPECT_THROW(run_suite(fixture::scenario("paper-4.1"), o), ConfigError);
}

TEST(Suite, Deterministic) {
  SuiteOptions o;
  o.samples = 16;
  o.seed = 7;
  const auto a = emit_report(run_suite(fixture::scenario("paper-4.1"), o), ReportFormat::kJson);
  const auto b = emit_report(run_suite(fixture::scenario("paper-4.1"), o), ReportFormat::kJson);
  EXPECT_EQ(a, b);
  o.seed = 8;
  EXPECT_NE(a, emit_report(run_suite(fixture::scenario("paper-4.1"), o), ReportFormat::kJson));
}

CheckReport report(std::string name, double residual, double tol, bool expected_fail = false) {
  CheckReport r;
  r.name = std::move(name);
  r.max_residual = residual;
  r.tolerance = tol;
  r.passed = residual <= tol;
  r.expected_fail = expected_fail;
  r.worst_point = {0.1, 1.0 / 3.0};
  r.sub_residuals = {{"identity", residual}};
  return r;
}

TEST(Report, FailureFirstAndExitCode) {
  const std::vector<CheckReport> rs = {report("a.ok", 1e-12, 1e-7), report("b.bad", 0.5, 1e-7)};
  const std::string text = emit_report(rs, ReportFormat::kText);
  EXPECT_EQ(text.rfind("FAIL", 0), 0u) << text;
  EXPECT_LT(text.find("b.bad"), text.find("a.ok"));
  EXPECT_EQ(report_exit_code(rs), 1);
  EXPECT_EQ(report_exit_code({report("a.ok", 0, 1e-7)}), 0);
  EXPECT_EQ(report_exit_code({report("x", 1, 1e-7, true)}), 0);
}

TEST(Report, JsonRoundTripIsBitExact) {
  std::vector<CheckReport> rs = {report("a", 1.0 / 3.0, 1e-7), report("b", 2.220446049250313e-16, 1e-9),
                                 report("c", std::numeric_limits<double>::infinity(), 1e-7),
                                 report("d", 0.1 + 0.2, 1e-7, true)};
  rs[0].notes = {"a note"};
  const auto back = parse_report_json(emit_report(rs, ReportFormat::kJson));
  ASSERT_EQ(back.size(), rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    EXPECT_EQ(back[i].name, rs[i].name);
    EXPECT_EQ(back[i].max_residual, rs[i].max_residual);
    EXPECT_EQ(back[i].tolerance, rs[i].tolerance);
    EXPECT_EQ(back[i].passed, rs[i].passed);
    EXPECT_EQ(back[i].expected_fail, rs[i].expected_fail);
    EXPECT_EQ(back[i].worst_point, rs[i].worst_point);
    ASSERT_EQ(back[i].sub_residuals.size(), 1u);
    EXPECT_EQ(back[i].sub_residuals[0].residual, rs[i].sub_residuals[0].residual);
    EXPECT_EQ(back[i].notes, rs[i].notes);
  }
}

TEST(Tracker, NanFailsLoudly) {
  ResidualTracker t("nan", 1e-7);
  const std::vector<double> p = {0.0};
  t.record("x", std::nan(""), p);
  const CheckReport r = t.report();
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(std::isinf(r.max_residual));
}

}  // namespace
}  // namespace parageo
