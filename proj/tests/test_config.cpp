#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "ratectl/config.hpp"
#include "ratectl/reference.hpp"

using namespace ratectl;

namespace {

std::string data_file(const std::string& name) { return std::string(RATECTL_DATA_DIR) + "/" + name; }

void expect_same_scenario(const Scenario& a, const Scenario& b) {
  EXPECT_EQ(a.name, b.name);
  EXPECT_EQ(a.overrides, b.overrides);
  EXPECT_EQ(a.perturbations, b.perturbations);
  EXPECT_EQ(a.rate, b.rate);
  ASSERT_EQ(a.reference.has_value(), b.reference.has_value());
  if (a.reference) {
    EXPECT_EQ(a.reference->expected, b.reference->expected);
    EXPECT_EQ(a.reference->tolerance, b.reference->tolerance);
  }
  ASSERT_EQ(a.closure.has_value(), b.closure.has_value());
  if (a.closure) {
    EXPECT_EQ(a.closure->kind, b.closure->kind);
    EXPECT_EQ(a.closure->bracket.lo, b.closure->bracket.lo);
    EXPECT_EQ(a.closure->bracket.hi, b.closure->bracket.hi);
    EXPECT_EQ(a.closure->target_share, b.closure->target_share);
    EXPECT_EQ(a.closure->tolerance, b.closure->tolerance);
    EXPECT_EQ(a.closure->max_iterations, b.closure->max_iterations);
    EXPECT_EQ(a.closure->grid, b.closure->grid);
  }
}

}  // namespace

TEST(Numbers, Parse) {
  EXPECT_EQ(parse_number("0.4821"), 0.4821);
  EXPECT_EQ(parse_number(" -2e-3 "), -2e-3);
  EXPECT_EQ(parse_number("+1.5"), 1.5);
  EXPECT_THROW(parse_number("1.5x"), ParseError);
  EXPECT_THROW(parse_number(""), ParseError);
  EXPECT_THROW(parse_number("abc"), ParseError);
  EXPECT_EQ(parse_number_list("0.3, 0.7,41"), (std::vector<double>{0.3, 0.7, 41.0}));
  EXPECT_THROW(parse_number_list("0.3,,0.7"), ParseError);
}

TEST(Numbers, RoundTripFormatting) {
  for (double v : {0.1, 1.0 / 3.0, 31756.0, 1.6770e-46, -14948.74, 0.7483044201610204})
    EXPECT_EQ(parse_number(format_roundtrip(v)), v);
}

TEST(InstanceFile, WriteParseRoundTripIsBitIdentical) {
  ModelInstance m = baseline_instance();
  m.preferences.gamma = 1.0 / 3.0 + 1.0;
  m.technology.a1 = 1.15;
  m.fiscal = {123.456, 78.9, 0.1};
  m.k0 = 31756.000000001;
  std::ostringstream out;
  write_instance(out, m);
  const ModelInstance back = parse_instance(out.str());
  EXPECT_EQ(back, m);
  const Equilibrium a = solve_at_rate(m, 0.4821);
  const Equilibrium b = solve_at_rate(back, 0.4821);
  EXPECT_EQ(a.present.trade_balance, b.present.trade_balance);
  EXPECT_EQ(a.welfare, b.welfare);
}

TEST(InstanceFile, BundledBaselineMatchesDefaults) {
  std::ifstream in(data_file("baseline.cfg"));
  ASSERT_TRUE(in);
  EXPECT_EQ(parse_instance(in), baseline_instance());
}

TEST(InstanceFile, PartialFileKeepsBaselineValues) {
  const ModelInstance m = parse_instance("# only one change\ntheta = 10.35\n\n");
  ModelInstance expected = baseline_instance();
  expected.preferences.theta = 10.35;
  EXPECT_EQ(m, expected);
}

TEST(InstanceFile, Errors) {
  EXPECT_THROW(parse_instance("preferences.kappa = 1"), ParseError);
  EXPECT_THROW(parse_instance("gamma 1.2"), ParseError);
  EXPECT_THROW(parse_instance("gamma = "), ParseError);
  EXPECT_THROW(parse_instance("gamma = one"), ParseError);
  EXPECT_THROW(parse_instance("alpha = 1.0"), DomainError);
  EXPECT_THROW(parse_instance("N0 = -3"), DomainError);
}

TEST(ScenarioFile, BundledSuiteEqualsReferenceTable) {
  std::ifstream in(data_file("reference_suite.scn"));
  ASSERT_TRUE(in);
  const auto parsed = parse_scenarios(in);
  const auto expected = reference_suite();
  ASSERT_EQ(parsed.size(), expected.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) expect_same_scenario(parsed[i], expected[i]);
}

TEST(ScenarioFile, WriteParseRoundTrip) {
  auto scenarios = reference_suite();
  Scenario closed;
  closed.name = "target";
  closed.overrides["K0"] = 30000.0;
  closed.perturbations["technology.A1"] = 1.1;
  ClosureSpec spec;
  spec.kind = ClosureKind::trade_share_target;
  spec.target_share = -0.1;
  spec.bracket = {0.05, 1.5};
  spec.tolerance = 1e-12;
  spec.max_iterations = 90;
  closed.closure = spec;
  scenarios.push_back(closed);
  Scenario sweep;
  sweep.name = "sweep";
  ClosureSpec w;
  w.kind = ClosureKind::welfare_sweep;
  w.grid = {0.2, 0.4, 0.6};
  sweep.closure = w;
  scenarios.push_back(sweep);

  std::ostringstream out;
  write_scenarios(out, scenarios);
  const auto back = parse_scenarios(out.str());
  ASSERT_EQ(back.size(), scenarios.size());
  for (std::size_t i = 0; i < back.size(); ++i) expect_same_scenario(back[i], scenarios[i]);
}

TEST(ScenarioFile, Errors) {
  EXPECT_THROW(parse_scenarios("rate = 0.4"), ParseError);
  EXPECT_THROW(parse_scenarios("[a\nrate = 0.4"), ParseError);
  EXPECT_THROW(parse_scenarios("[a]\nperturb.gamma = 1.1"), ParseError);
  EXPECT_THROW(parse_scenarios("[a]\nrate = 0.4\nperturb.kappa = 1.1"), ParseError);
  EXPECT_THROW(parse_scenarios("[a]\nrate = 0.4\nwhatever = 1"), ParseError);
  EXPECT_THROW(parse_scenarios("[a]\nrate = 0.4\nexpect.tb0 = 1"), ParseError);
  EXPECT_THROW(parse_scenarios("[a]\nrate = 0.4\nexpect.tolerance = 1e-3"), ParseError);
  EXPECT_THROW(parse_scenarios("[a]\nrate = 0.4\nset.gamma = 2\nperturb.preferences.gamma = 1.1"),
               ParseError);
  EXPECT_THROW(parse_scenarios("[a]\nclosure.kind = fixed"), ParseError);
  EXPECT_THROW(parse_scenarios("[a]\nclosure.kind = magic"), ParseError);
  EXPECT_THROW(parse_scenarios("[a]\nclosure.bracket = 0.1"), ParseError);
  EXPECT_THROW(parse_scenarios("[a]\nclosure.colour = red"), ParseError);
}

TEST(ScenarioFile, ClosureOnlyScenario) {
  const auto s = parse_scenarios("[auto]\nclosure.kind = balanced_trade\nclosure.bracket = 0.1,2\n");
  ASSERT_EQ(s.size(), 1u);
  ASSERT_TRUE(s[0].closure);
  EXPECT_EQ(s[0].closure->kind, ClosureKind::balanced_trade);
  EXPECT_EQ(s[0].closure->bracket.lo, 0.1);
  EXPECT_FALSE(s[0].reference);
}
