#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "ratectl/reference.hpp"
#include "ratectl/statics.hpp"

using namespace ratectl;

TEST(ApplyScenario, Perturbations) {
  const ModelInstance base = baseline_instance();
  Scenario s;
  s.perturbations["gamma"] = 1.15;
  EXPECT_NEAR(apply_scenario(base, s).preferences.gamma, 1.38, 1e-12);
  s.perturbations.clear();
  s.perturbations["rho"] = 1.15;
  EXPECT_NEAR(apply_scenario(base, s).preferences.rho, 0.575, 1e-12);
  s.perturbations.clear();
  s.perturbations["preferences.theta"] = 1.15;
  EXPECT_NEAR(apply_scenario(base, s).preferences.theta, 10.35, 1e-12);
  EXPECT_EQ(base, baseline_instance());
}

TEST(ApplyScenario, EmptyScenarioIsIdentity) {
  EXPECT_EQ(apply_scenario(baseline_instance(), Scenario{}), baseline_instance());
}

TEST(ApplyScenario, Overrides) {
  Scenario s;
  s.overrides["K0"] = 40000.0;
  s.overrides["G1"] = 12.5;
  const ModelInstance m = apply_scenario(baseline_instance(), s);
  EXPECT_EQ(m.k0, 40000.0);
  EXPECT_EQ(m.fiscal.g1, 12.5);
}

TEST(ApplyScenario, Errors) {
  Scenario s;
  s.perturbations["kappa"] = 1.1;
  EXPECT_THROW(apply_scenario(baseline_instance(), s), UnknownPathError);
  Scenario both;
  both.overrides["gamma"] = 2.0;
  both.perturbations["preferences.gamma"] = 1.1;
  EXPECT_THROW(apply_scenario(baseline_instance(), both), DomainError);
}

TEST(ReportRow, BaselineRatios) {
  const ModelInstance m = baseline_instance();
  const TableColumn c = report_row(solve_at_rate(m, 0.4821), m);
  EXPECT_NEAR(c[index(TableRow::wage_ratio)], 1.4459, 2e-3 * 1.4459);
  EXPECT_NEAR(c[index(TableRow::investment_share)], 0.3472, 2e-3 * 0.3472);
  EXPECT_NEAR(c[index(TableRow::wage_0_over_rate)], 0.3413, 2e-3 * 0.3413);
  EXPECT_NEAR(c[index(TableRow::rate_per_year)], 0.0249, 2e-3 * 0.0249);
  EXPECT_EQ(c[index(TableRow::rate)], 0.4821);
  EXPECT_DOUBLE_EQ(c[index(TableRow::trade_share)],
                   c[index(TableRow::trade_balance_0)] / c[index(TableRow::output_0)]);
}

TEST(ReportRow, RowKeysRoundTrip) {
  for (const auto& info : kRowInfo) EXPECT_EQ(parse_row_key(info.key), info.row);
  EXPECT_THROW(parse_row_key("y2"), UnknownPathError);
}

TEST(ReferenceTable, RatioRowsConsistentWithLevels) {
  for (const auto& ref : kReferenceTable) {
    const auto& e = ref.expected;
    auto at = [&](TableRow r) { return e[index(r)]; };
    const double tol = 2e-3;
    EXPECT_NEAR(at(TableRow::investment_share),
                at(TableRow::investment_0) / at(TableRow::output_0),
                tol * at(TableRow::investment_share));
    EXPECT_NEAR(at(TableRow::consumption_share),
                at(TableRow::consumption_0) / at(TableRow::output_0),
                tol * at(TableRow::consumption_share));
    EXPECT_NEAR(at(TableRow::trade_share), at(TableRow::trade_balance_0) / at(TableRow::output_0),
                tol * std::abs(at(TableRow::trade_share)));
    EXPECT_NEAR(at(TableRow::wage_0_over_rate), at(TableRow::wage_0) / at(TableRow::rate),
                tol * at(TableRow::wage_0_over_rate));
  }
}

TEST(RunSuite, ReproducesReferenceTable) {
  const SuiteReport report = run_suite(baseline_instance(), reference_suite());
  ASSERT_EQ(report.scenarios.size(), 5u);
  for (const auto& s : report.scenarios) {
    ASSERT_TRUE(s.solved) << s.name;
    for (const auto& info : kRowInfo)
      EXPECT_TRUE(s.cell_pass[index(info.row)])
          << s.name << " / " << info.label << ": deviation " << s.deviation[index(info.row)];
  }
  EXPECT_TRUE(report.passed());
}

TEST(RunSuite, SignChecks) {
  const SuiteReport report = run_suite(baseline_instance(), reference_suite());
  ASSERT_EQ(report.sign_checks.size(), 22u);
  for (const auto& c : report.sign_checks) EXPECT_TRUE(c.passed) << c.scenario << ": " << c.description;
}

TEST(RunSuite, GammaColumnMatchesBaselineOnProductionSide) {
  const SuiteReport report = run_suite(baseline_instance(), reference_suite());
  const TableColumn& b = *report.scenarios[0].solved;
  const TableColumn& g = *report.scenarios[1].solved;
  for (TableRow row : {TableRow::output_0, TableRow::output_1, TableRow::hours_0,
                       TableRow::investment_0, TableRow::wage_0, TableRow::wage_1, TableRow::rate})
    EXPECT_EQ(b[index(row)], g[index(row)]);
  EXPECT_NE(b[index(TableRow::consumption_0)], g[index(TableRow::consumption_0)]);
}

TEST(RunSuite, FailuresDoNotAbort) {
  auto suite = reference_suite();
  suite[2].rate = -5.0;
  suite[3].perturbations["nonsense"] = 2.0;
  suite[4].reference->expected[index(TableRow::output_0)] *= 1.01;
  const SuiteReport report = run_suite(baseline_instance(), suite);
  EXPECT_FALSE(report.passed());
  EXPECT_TRUE(report.scenarios[0].passed());
  EXPECT_TRUE(report.scenarios[1].passed());
  EXPECT_FALSE(report.scenarios[2].error.empty());
  EXPECT_FALSE(report.scenarios[3].error.empty());
  EXPECT_TRUE(report.scenarios[4].solved.has_value());
  EXPECT_FALSE(report.scenarios[4].cell_pass[index(TableRow::output_0)]);
  EXPECT_TRUE(report.scenarios[4].cell_pass[index(TableRow::output_1)]);
}

TEST(RunSuite, ClosureScenarioResolvesRate) {
  Scenario s;
  s.name = "autarky";
  ClosureSpec spec;
  spec.kind = ClosureKind::balanced_trade;
  spec.bracket = {0.1, 2.0};
  s.closure = spec;
  const SuiteReport report = run_suite(baseline_instance(), {s});
  ASSERT_TRUE(report.scenarios[0].solved);
  EXPECT_NEAR(report.scenarios[0].rate, 0.7483044, 1e-6);
  EXPECT_LE(std::abs((*report.scenarios[0].solved)[index(TableRow::trade_share)]), 1e-10);
}
