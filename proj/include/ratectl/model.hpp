#pragma once

/// \file
/// Two-period open-economy general equilibrium evaluated at a given real
/// interest rate. The rate is an input: the household, firm and government
/// budget relations make the intertemporal external balance redundant, so
/// every rate yields a consistent equilibrium.

#include <cmath>
#include <string>

#include "ratectl/errors.hpp"

namespace ratectl {

/// Smallest admissible value of delta + r (user cost of capital).
inline constexpr double kMinUserCost = 1e-9;

struct Preferences {
  double gamma = 1.2;  ///< inverse intertemporal elasticity of substitution
  double theta = 9.0;  ///< inverse Frisch elasticity
  double rho = 0.5;    ///< subjective discount rate per period
  double phi = 1.0;    ///< labor-disutility weight; affects welfare only

  [[nodiscard]] double beta() const { return 1.0 / (1.0 + rho); }

  friend bool operator==(const Preferences&, const Preferences&) = default;
};

struct Technology {
  double alpha = 0.5;  ///< output elasticity of capital
  double delta = 1.0;  ///< depreciation per period
  double a0 = 1.0;     ///< labor efficiency, present
  double a1 = 1.0;     ///< labor efficiency, future (as anticipated today)

  friend bool operator==(const Technology&, const Technology&) = default;
};

struct Demography {
  double n0 = 10.0;
  double n1 = 10.0;
  double l0_max = 35000.0;  ///< hours per household per period
  double l1_max = 29440.0;

  friend bool operator==(const Demography&, const Demography&) = default;
};

struct Fiscal {
  double g0 = 0.0;
  double g1 = 0.0;
  double t0 = 0.0;  ///< total present tax revenue

  friend bool operator==(const Fiscal&, const Fiscal&) = default;
};

struct ModelInstance {
  Preferences preferences;
  Technology technology;
  Demography demography;
  Fiscal fiscal;
  double k0 = 31756.0;
  double years_per_period = 16.0;

  friend bool operator==(const ModelInstance&, const ModelInstance&) = default;
};

/// The calibrated baseline economy (16-year periods, 10 households).
inline ModelInstance baseline_instance() { return ModelInstance{}; }

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

inline bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace detail

/// Throws DomainError naming the first violated parameter restriction.
inline void validate(const ModelInstance& m) {
  using detail::positive;
  using detail::require;
  const auto& p = m.preferences;
  const auto& t = m.technology;
  const auto& d = m.demography;
  const auto& f = m.fiscal;
  require(positive(p.gamma), "gamma must be > 0");
  require(positive(p.theta), "theta must be > 0");
  require(positive(p.rho), "rho must be > 0");
  require(positive(p.phi), "phi must be > 0");
  require(std::isfinite(t.alpha) && t.alpha > 0.0 && t.alpha < 1.0, "alpha must lie in (0,1)");
  require(std::isfinite(t.delta) && t.delta > 0.0 && t.delta <= 1.0, "delta must lie in (0,1]");
  require(positive(t.a0), "A0 must be > 0");
  require(positive(t.a1), "A1 must be > 0");
  require(positive(d.n0), "N0 must be > 0");
  require(positive(d.n1), "N1 must be > 0");
  require(positive(d.l0_max), "l0_max must be > 0");
  require(positive(d.l1_max), "l1_max must be > 0");
  require(std::isfinite(f.g0) && f.g0 >= 0.0, "G0 must be >= 0");
  require(std::isfinite(f.g1) && f.g1 >= 0.0, "G1 must be >= 0");
  require(std::isfinite(f.t0), "tax0 must be finite");
  require(positive(m.k0), "K0 must be > 0");
  require(positive(m.years_per_period), "years_per_period must be > 0");
}

/// r > -1 and delta + r > kMinUserCost.
inline bool admissible_rate(const Technology& tech, double r) {
  return std::isfinite(r) && r > -1.0 && tech.delta + r > kMinUserCost;
}

inline void require_admissible_rate(const Technology& tech, double r) {
  if (!(std::isfinite(r) && r > -1.0))
    throw DomainError("interest rate must be finite and > -1, got " + std::to_string(r));
  if (!(tech.delta + r > kMinUserCost))
    throw DomainError("delta + r must be > 0, got r = " + std::to_string(r));
}

// ---------------------------------------------------------------------------
// Firm side

/// Future capital stock equating the net marginal product of capital to r.
inline double capital_demand(const Technology& tech, double aggregate_hours_1, double r) {
  require_admissible_rate(tech, r);
  detail::require(detail::positive(aggregate_hours_1), "future aggregate hours must be > 0");
  const double ratio = tech.alpha / (tech.delta + r);
  return tech.a1 * aggregate_hours_1 * std::pow(ratio, 1.0 / (1.0 - tech.alpha));
}

/// Cobb-Douglas output K^alpha (A L)^(1-alpha).
inline double output(double capital, double efficiency, double aggregate_hours, double alpha) {
  detail::require(detail::positive(capital), "capital must be > 0");
  detail::require(detail::positive(efficiency), "labor efficiency must be > 0");
  detail::require(detail::positive(aggregate_hours), "aggregate hours must be > 0");
  return std::pow(capital, alpha) * std::pow(efficiency * aggregate_hours, 1.0 - alpha);
}

/// Marginal product of labor.
inline double wage_mpl(double y, double aggregate_hours, double alpha) {
  detail::require(detail::positive(aggregate_hours), "aggregate hours must be > 0");
  return (1.0 - alpha) * y / aggregate_hours;
}

/// Future wage implied by the capital demand; independent of future hours.
inline double future_wage(const Technology& tech, double r) {
  require_admissible_rate(tech, r);
  const double ratio = tech.alpha / (tech.delta + r);
  return (1.0 - tech.alpha) * tech.a1 * std::pow(ratio, tech.alpha / (1.0 - tech.alpha));
}

/// Profit per household net of retained investment (zero for the future period).
inline double dividends(double y, double wage, double aggregate_hours, double investment,
                        double households) {
  detail::require(detail::positive(households), "household count must be > 0");
  return (y - wage * aggregate_hours - investment) / households;
}

// ---------------------------------------------------------------------------
// Household side

struct LaborSupply {
  double hours = 0.0;    ///< present hours per household
  bool binding = false;  ///< true when clamped at l0_max
};

/// Present hours solving l0 = [beta w0(l0) (1+r) / w1]^(1/theta) l1, where w0
/// depends on l0 through the present marginal product of labor. Solved in
/// closed form (exponent 1/(theta+alpha)) in log space, then clamped.
inline LaborSupply labor_supply_present(const ModelInstance& m, double r, double w1) {
  if (!(std::isfinite(r) && r > -1.0)) throw DomainError("interest rate must be > -1");
  detail::require(detail::positive(w1), "future wage must be > 0");
  const auto& p = m.preferences;
  const auto& t = m.technology;
  const auto& d = m.demography;
  const double log_rhs = std::log(p.beta()) + std::log1p(r) + std::log(1.0 - t.alpha) +
                         t.alpha * std::log(m.k0) + (1.0 - t.alpha) * std::log(t.a0) -
                         t.alpha * std::log(d.n0) + p.theta * std::log(d.l1_max) - std::log(w1);
  const double hours = std::exp(log_rhs / (p.theta + t.alpha));
  if (hours > d.l0_max) return {d.l0_max, true};
  return {hours, false};
}

/// Consumption growth factor c1/c0 from the Euler equation.
inline double euler_growth(const Preferences& prefs, double r) {
  if (!(std::isfinite(r) && r > -1.0)) throw DomainError("interest rate must be > -1");
  return std::pow(prefs.beta() * (1.0 + r), 1.0 / prefs.gamma);
}

/// Denominator of the consumption function: c0 = PV income / q.
inline double q_factor(const Preferences& prefs, double r) {
  return 1.0 + euler_growth(prefs, r) / (1.0 + r);
}

// ---------------------------------------------------------------------------
// Government

/// Future tax revenue that closes the government's present-value budget.
inline double government_t1(const Fiscal& fiscal, double r) {
  if (!(std::isfinite(r) && r > -1.0)) throw DomainError("interest rate must be > -1");
  return (1.0 + r) * fiscal.g0 + fiscal.g1 - fiscal.t0 * (1.0 + r);
}

// ---------------------------------------------------------------------------
// Welfare

/// c^(1-gamma)/(1-gamma) - phi l^(1+theta)/(1+theta); log(c) when gamma == 1.
inline double period_utility(const Preferences& prefs, double consumption, double hours) {
  detail::require(detail::positive(consumption), "consumption must be > 0 for utility");
  const double consumption_term =
      prefs.gamma == 1.0 ? std::log(consumption)
                         : std::pow(consumption, 1.0 - prefs.gamma) / (1.0 - prefs.gamma);
  const double labor_term =
      hours == 0.0 ? 0.0 : prefs.phi * std::pow(hours, 1.0 + prefs.theta) / (1.0 + prefs.theta);
  return consumption_term - labor_term;
}

inline double lifetime_utility(const Preferences& prefs, double c0, double l0, double c1,
                               double l1) {
  return period_utility(prefs, c0, l0) + prefs.beta() * period_utility(prefs, c1, l1);
}

// ---------------------------------------------------------------------------
// Equilibrium

struct PeriodState {
  double y = 0.0;          ///< output
  double k = 0.0;          ///< capital
  double hours_total = 0.0;  ///< L = N l
  double hours = 0.0;      ///< l, per household
  double wage = 0.0;
  double c = 0.0;          ///< consumption per household
  double c_total = 0.0;    ///< C = N c
  double dividend = 0.0;   ///< x, per household
  double tax = 0.0;        ///< per household
  double tax_total = 0.0;  ///< T
  double purchases = 0.0;  ///< G
  double trade_balance = 0.0;  ///< X - M
};

struct Equilibrium {
  double r = 0.0;
  PeriodState present;
  PeriodState future;
  double i0 = 0.0;         ///< gross investment
  double q = 0.0;
  double pv_income = 0.0;  ///< per-household present value of net income
  double s0n = 0.0;        ///< national saving Y0 - C0 - G0
  double s1x = 0.0;        ///< external saving tb1/(1+r)
  double welfare = 0.0;
  bool l0_binding = false;
};

/// Net income of one household in each period (labor + dividend - tax).
inline double household_net_income(const PeriodState& s) {
  return s.wage * s.hours + s.dividend - s.tax;
}

/// Present value of the two net incomes; shared with the partial schedules so
/// both paths round identically.
inline double present_value_income(double net_income_0, double net_income_1, double r) {
  return net_income_0 + net_income_1 / (1.0 + r);
}

struct SavingSplit {
  double national = 0.0;  ///< S0N
  double external = 0.0;  ///< S1x
};

/// Investment is financed by national saving plus the present value of the
/// future trade balance.
inline SavingSplit saving_decomposition(const Equilibrium& eq) {
  return {eq.present.y - eq.present.c_total - eq.present.purchases,
          eq.future.trade_balance / (1.0 + eq.r)};
}

inline double welfare(const Equilibrium& eq, const Preferences& prefs) {
  return lifetime_utility(prefs, eq.present.c, eq.present.hours, eq.future.c, eq.future.hours);
}

/// tb0 + tb1/(1+r); zero up to rounding whenever N0 == N1.
inline double walras_residual(const Equilibrium& eq) {
  return eq.present.trade_balance + eq.future.trade_balance / (1.0 + eq.r);
}

/// Evaluates the whole equation system at the given rate. Deterministic.
inline Equilibrium solve_at_rate(const ModelInstance& m, double r) {
  validate(m);
  require_admissible_rate(m.technology, r);
  const auto& t = m.technology;
  const auto& d = m.demography;
  const auto& f = m.fiscal;

  Equilibrium eq;
  eq.r = r;
  auto& now = eq.present;
  auto& next = eq.future;

  next.hours = d.l1_max;
  next.hours_total = d.n1 * next.hours;
  next.wage = future_wage(t, r);
  next.k = capital_demand(t, next.hours_total, r);
  next.y = output(next.k, t.a1, next.hours_total, t.alpha);

  const LaborSupply labor = labor_supply_present(m, r, next.wage);
  eq.l0_binding = labor.binding;
  now.hours = labor.hours;
  now.hours_total = d.n0 * now.hours;
  now.k = m.k0;
  now.y = output(m.k0, t.a0, now.hours_total, t.alpha);
  now.wage = wage_mpl(now.y, now.hours_total, t.alpha);

  eq.i0 = next.k - (1.0 - t.delta) * m.k0;
  now.dividend = dividends(now.y, now.wage, now.hours_total, eq.i0, d.n0);
  next.dividend = dividends(next.y, next.wage, next.hours_total, 0.0, d.n1);

  now.tax_total = f.t0;
  next.tax_total = government_t1(f, r);
  now.tax = now.tax_total / d.n0;
  next.tax = next.tax_total / d.n1;

  eq.pv_income = present_value_income(household_net_income(now), household_net_income(next), r);
  if (!(eq.pv_income > 0.0))
    throw InfeasibleError("household present-value income is not positive at r = " +
                          std::to_string(r));
  eq.q = q_factor(m.preferences, r);
  now.c = eq.pv_income / eq.q;
  next.c = now.c * euler_growth(m.preferences, r);
  now.c_total = d.n0 * now.c;
  next.c_total = d.n1 * next.c;

  now.purchases = f.g0;
  next.purchases = f.g1;
  now.trade_balance = now.y - now.c_total - eq.i0 - now.purchases;
  next.trade_balance = next.y - next.c_total - next.purchases;

  const SavingSplit saving = saving_decomposition(eq);
  eq.s0n = saving.national;
  eq.s1x = saving.external;
  eq.welfare = welfare(eq, m.preferences);
  return eq;
}

/// (1 + r)^(1/years) - 1.
inline double annualize_rate(double per_period, double years) {
  if (!(std::isfinite(per_period) && per_period > -1.0))
    throw DomainError("per-period rate must be > -1");
  detail::require(detail::positive(years), "years per period must be > 0");
  return std::expm1(std::log1p(per_period) / years);
}

}  // namespace ratectl
