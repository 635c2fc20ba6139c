#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ratectl/closure.hpp"
#include "ratectl/schedules.hpp"

using namespace ratectl;

namespace {

ClosureSpec balanced(double lo, double hi) {
  ClosureSpec spec;
  spec.kind = ClosureKind::balanced_trade;
  spec.bracket = {lo, hi};
  return spec;
}

}  // namespace

TEST(Bisect, FindsSquareRoot) {
  const auto report = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12, 200);
  EXPECT_NEAR(report.root, std::sqrt(2.0), 1e-12);
  EXPECT_LE(std::abs(report.residual), 1e-12);
}

TEST(Bisect, AcceptsRootAtEndpoint) {
  const auto report = bisect([](double x) { return x - 1.0; }, 1.0, 3.0, 1e-12, 10);
  EXPECT_EQ(report.root, 1.0);
  EXPECT_EQ(report.iterations, 0);
}

TEST(Bisect, Errors) {
  EXPECT_THROW(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-10, 100),
               NoSignChangeError);
  EXPECT_THROW(bisect([](double x) { return x - 0.3; }, 0.0, 1.0, 1e-14, 3), NonConvergenceError);
}

TEST(Closure, FixedNeverEvaluatesModel) {
  ClosureSpec spec;
  spec.kind = ClosureKind::fixed;
  spec.fixed_rate = 0.4821;
  const auto result = resolve_rate(baseline_instance(), spec);
  EXPECT_EQ(result.rate, 0.4821);
  EXPECT_EQ(result.diagnostics.evaluations, 0);
  EXPECT_EQ(result.diagnostics.iterations, 0);
}

TEST(Closure, BalancedTradeClosesBothPeriods) {
  const ModelInstance m = baseline_instance();
  for (double hi : {1.2, 2.0}) {
    const auto result = resolve_rate(m, balanced(0.4821, hi));
    const Equilibrium eq = solve_at_rate(m, result.rate);
    EXPECT_LE(std::abs(eq.present.trade_balance), 1e-10 * eq.present.y);
    EXPECT_LE(std::abs(eq.future.trade_balance), 1e-9 * eq.future.y);
    EXPECT_GT(result.rate, 0.4821);
    EXPECT_NEAR(result.rate, 0.748304420161, 1e-8);
  }
}

TEST(Closure, IterationBound) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<> lo(0.05, 0.4), hi(1.5, 3.0);
  for (int i = 0; i < 20; ++i) {
    ClosureSpec spec = balanced(lo(rng), hi(rng));
    spec.tolerance = std::pow(10.0, -6.0 - i % 6);
    const auto result = resolve_rate(baseline_instance(), spec);
    const double bound =
        std::ceil(std::log2((spec.bracket.hi - spec.bracket.lo) / spec.tolerance)) + 2.0;
    EXPECT_LE(result.diagnostics.iterations, bound);
  }
}

TEST(Closure, TradeShareTargetRoundTrip) {
  const ModelInstance m = baseline_instance();
  ClosureSpec spec;
  spec.kind = ClosureKind::trade_share_target;
  spec.bracket = {0.3, 0.7};
  spec.target_share = -0.1549;  // reference share at r = 0.4821
  EXPECT_NEAR(resolve_rate(m, spec).rate, 0.4821, 1e-4);

  const Equilibrium eq = solve_at_rate(m, 0.55);
  spec.target_share = eq.present.trade_balance / eq.present.y;
  const auto result = resolve_rate(m, spec);
  EXPECT_NEAR(result.rate, 0.55, 1e-8);
  const Equilibrium at = solve_at_rate(m, result.rate);
  EXPECT_LE(std::abs(at.present.trade_balance / at.present.y - spec.target_share), 1e-10);
}

TEST(Closure, ErrorPaths) {
  const ModelInstance m = baseline_instance();
  EXPECT_THROW(resolve_rate(m, balanced(0.1, 0.3)), NoSignChangeError);
  EXPECT_THROW(resolve_rate(m, balanced(0.5, 0.4)), DomainError);
  EXPECT_THROW(resolve_rate(m, balanced(-1.5, 0.4)), DomainError);
  ClosureSpec spec = balanced(0.1, 2.0);
  spec.tolerance = 0.0;
  EXPECT_THROW(resolve_rate(m, spec), DomainError);
  spec.tolerance = 1e-12;
  spec.max_iterations = 4;
  EXPECT_THROW(resolve_rate(m, spec), NonConvergenceError);
  ClosureSpec sweep;
  sweep.kind = ClosureKind::welfare_sweep;
  EXPECT_THROW(resolve_rate(m, sweep), DomainError);
  ClosureSpec fixed;
  fixed.fixed_rate = -3.0;
  EXPECT_THROW(resolve_rate(m, fixed), DomainError);
}

TEST(Closure, KindNames) {
  for (auto k : {ClosureKind::fixed, ClosureKind::balanced_trade, ClosureKind::trade_share_target,
                 ClosureKind::welfare_sweep})
    EXPECT_EQ(parse_closure_kind(to_string(k)), k);
  EXPECT_THROW(parse_closure_kind("newton"), ParseError);
}

TEST(WelfareSweep, ArgmaxMatchesBruteForceWithConsistentLaborWeight) {
  ModelInstance m = baseline_instance();
  const double r_star = resolve_rate(m, balanced(0.4821, 2.0)).rate;
  m.preferences.phi = implied_labor_weight(m, r_star);
  ClosureSpec spec;
  spec.kind = ClosureKind::welfare_sweep;
  spec.grid = linear_grid(0.40, 1.10, 71);
  const auto result = resolve_rate(m, spec);
  EXPECT_EQ(result.diagnostics.evaluations, 71);

  double best_r = 0.0;
  double best_u = -std::numeric_limits<double>::infinity();
  std::size_t near = 0;
  std::vector<double> u(spec.grid.size());
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    u[i] = welfare(solve_at_rate(m, spec.grid[i]), m.preferences);
    if (u[i] > best_u) best_u = u[i], best_r = spec.grid[i];
    if (std::abs(spec.grid[i] - r_star) < std::abs(spec.grid[near] - r_star)) near = i;
  }
  EXPECT_EQ(result.rate, best_r);

  // Trading at any rate other than the autarky rate helps: the stationary point is a minimum.
  EXPECT_LT(u[near], u[near - 1]);
  EXPECT_LT(u[near], u[near + 1]);
  EXPECT_NE(result.rate, spec.grid[near]);

  // Pure argmax: grid order does not matter.
  std::vector<double> shuffled = spec.grid;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(17));
  spec.grid = shuffled;
  EXPECT_EQ(resolve_rate(m, spec).rate, result.rate);
}

TEST(WelfareSweep, TiesGoToLowestRate) {
  ClosureSpec spec;
  spec.kind = ClosureKind::welfare_sweep;
  spec.grid = {0.7, 0.5, 0.5, 0.7};
  ModelInstance m = baseline_instance();
  const auto result = resolve_rate(m, spec);
  // phi = 1: welfare falls with r, so the lowest rate wins.
  EXPECT_EQ(result.rate, 0.5);
}

TEST(WelfareStationarity, SignsAroundBalancedTrade) {
  ModelInstance m = baseline_instance();
  EXPECT_LT(welfare_stationarity_check(m, 0.4821, 1e-4), 0.0);

  const double r_star = resolve_rate(m, balanced(0.4821, 2.0)).rate;
  m.preferences.phi = implied_labor_weight(m, r_star);
  const double u = solve_at_rate(m, r_star).welfare;
  EXPECT_LE(std::abs(welfare_stationarity_check(m, r_star, 1e-4)), 1e-3 * std::abs(u));
  EXPECT_LT(welfare_stationarity_check(m, 0.4821, 1e-4), 0.0);
  EXPECT_GT(welfare_stationarity_check(m, 1.0, 1e-4), 0.0);
}

TEST(WelfareStationarity, OtherAutarkicEconomy) {
  ModelInstance m = baseline_instance();
  m.preferences.gamma = 2.5;
  m.technology.a1 = 1.1;
  m.fiscal = {500.0, 300.0, 400.0};
  const double r_star = resolve_rate(m, balanced(0.05, 3.0)).rate;
  EXPECT_LE(std::abs(solve_at_rate(m, r_star).present.trade_balance),
            1e-9 * solve_at_rate(m, r_star).present.y);
  m.preferences.phi = implied_labor_weight(m, r_star);
  const double u = solve_at_rate(m, r_star).welfare;
  EXPECT_LE(std::abs(welfare_stationarity_check(m, r_star, 1e-4)), 1e-6 * std::abs(u));
}

TEST(WelfareStationarity, RejectsBadStep) {
  EXPECT_THROW(welfare_stationarity_check(baseline_instance(), 0.5, 0.0), DomainError);
  EXPECT_THROW(welfare_stationarity_check(baseline_instance(), -0.9, 0.2), DomainError);
}
