#pragma once

/// \file
/// Comparative statics: perturb a baseline economy, solve each scenario at
/// its rate, lay the results out as the sixteen rows of the comparison table,
/// and compare against reference values.

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ratectl/closure.hpp"
#include "ratectl/errors.hpp"
#include "ratectl/model.hpp"
#include "ratectl/parameters.hpp"

namespace ratectl {

enum class TableRow : std::size_t {
  trade_balance_0,
  rate,
  rate_per_year,
  investment_0,
  output_1,
  output_0,
  hours_0,
  consumption_0,
  consumption_1,
  investment_share,
  consumption_share,
  wage_ratio,  ///< w0 / (w1 / (1+r))
  trade_share,
  wage_0,
  wage_0_over_rate,
  wage_1,
};

inline constexpr std::size_t kTableRows = 16;

using TableColumn = std::array<double, kTableRows>;

struct RowInfo {
  TableRow row;
  std::string_view label;  ///< as printed in the comparison table
  std::string_view key;    ///< used in scenario files and JSON
};

inline constexpr std::array<RowInfo, kTableRows> kRowInfo{{
    {TableRow::trade_balance_0, "X0 - M0", "tb0"},
    {TableRow::rate, "r", "r"},
    {TableRow::rate_per_year, "Per year r", "r_per_year"},
    {TableRow::investment_0, "Inv 0", "inv0"},
    {TableRow::output_1, "Y 1", "y1"},
    {TableRow::output_0, "Y 0", "y0"},
    {TableRow::hours_0, "l_0", "l0"},
    {TableRow::consumption_0, "C 0", "c0"},
    {TableRow::consumption_1, "C 1", "c1"},
    {TableRow::investment_share, "Inv 0 / Y 0", "inv0_y0"},
    {TableRow::consumption_share, "C 0 / Y 0", "c0_y0"},
    {TableRow::wage_ratio, "w0/w1/(1+r)", "wage_ratio"},
    {TableRow::trade_share, "(X0-M0)/Y0", "tb0_y0"},
    {TableRow::wage_0, "w0", "w0"},
    {TableRow::wage_0_over_rate, "w0/r", "w0_r"},
    {TableRow::wage_1, "w1", "w1"},
}};

constexpr std::size_t index(TableRow row) { return static_cast<std::size_t>(row); }

inline TableRow parse_row_key(std::string_view key) {
  for (const auto& info : kRowInfo)
    if (info.key == key) return info.row;
  throw UnknownPathError("unknown table row '" + std::string(key) + "'");
}

inline constexpr double kDefaultTableTolerance = 2e-3;

struct ReferenceRow {
  TableColumn expected{};
  double tolerance = kDefaultTableTolerance;
};

struct Scenario {
  std::string name;
  std::map<std::string, double> overrides;      ///< parameter -> absolute value
  std::map<std::string, double> perturbations;  ///< parameter -> multiplicative factor
  double rate = 0.0;
  std::optional<ClosureSpec> closure;  ///< when set, replaces `rate` at run time
  std::optional<ReferenceRow> reference;
};

/// Returns a perturbed copy of `base`. Unknown names raise UnknownPathError.
inline ModelInstance apply_scenario(const ModelInstance& base, const Scenario& s) {
  ModelInstance out = base;
  for (const auto& [path, value] : s.overrides) {
    const ParameterInfo& info = find_parameter(path);
    for (const auto& [other, factor] : s.perturbations) {
      if (&find_parameter(other) == &info)
        throw DomainError("parameter '" + path + "' is both overridden and perturbed in scenario '" +
                          s.name + "'");
    }
    parameter(out, info) = value;
  }
  for (const auto& [path, factor] : s.perturbations) parameter(out, path) *= factor;
  return out;
}

/// Level and ratio rows computed from one equilibrium.
inline TableColumn report_row(const Equilibrium& eq, const ModelInstance& m) {
  TableColumn c{};
  const auto& now = eq.present;
  const auto& next = eq.future;
  c[index(TableRow::trade_balance_0)] = now.trade_balance;
  c[index(TableRow::rate)] = eq.r;
  c[index(TableRow::rate_per_year)] = annualize_rate(eq.r, m.years_per_period);
  c[index(TableRow::investment_0)] = eq.i0;
  c[index(TableRow::output_1)] = next.y;
  c[index(TableRow::output_0)] = now.y;
  c[index(TableRow::hours_0)] = now.hours;
  c[index(TableRow::consumption_0)] = now.c_total;
  c[index(TableRow::consumption_1)] = next.c_total;
  c[index(TableRow::investment_share)] = eq.i0 / now.y;
  c[index(TableRow::consumption_share)] = now.c_total / now.y;
  c[index(TableRow::wage_ratio)] = now.wage / (next.wage / (1.0 + eq.r));
  c[index(TableRow::trade_share)] = now.trade_balance / now.y;
  c[index(TableRow::wage_0)] = now.wage;
  c[index(TableRow::wage_0_over_rate)] = now.wage / eq.r;
  c[index(TableRow::wage_1)] = next.wage;
  return c;
}

/// |solved - expected| / |expected|; absolute when the reference is zero.
inline double relative_deviation(double solved, double expected) {
  const double diff = std::abs(solved - expected);
  return expected == 0.0 ? diff : diff / std::abs(expected);
}

struct ScenarioOutcome {
  std::string name;
  double rate = 0.0;
  std::optional<TableColumn> solved;
  std::optional<ReferenceRow> reference;
  TableColumn deviation{};
  std::array<bool, kTableRows> cell_pass{};
  std::string error;  ///< non-empty when the scenario could not be solved

  [[nodiscard]] bool passed() const {
    if (!error.empty()) return false;
    if (!reference) return true;
    for (bool ok : cell_pass)
      if (!ok) return false;
    return true;
  }
};

struct SignCheck {
  std::string scenario;
  std::string description;
  bool passed = false;
};

struct SuiteReport {
  std::vector<ScenarioOutcome> scenarios;
  std::vector<SignCheck> sign_checks;

  [[nodiscard]] bool passed() const {
    for (const auto& s : scenarios)
      if (!s.passed()) return false;
    for (const auto& c : sign_checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

inline bool is_unperturbed(const Scenario& s) {
  return s.overrides.empty() && s.perturbations.empty();
}

/// The single parameter raised by this scenario, or empty.
inline std::string single_increase(const Scenario& s) {
  if (!s.overrides.empty() || s.perturbations.size() != 1) return {};
  const auto& [path, factor] = *s.perturbations.begin();
  if (!(factor > 1.0)) return {};
  return std::string(find_parameter(path).name);
}

/// Directional checks comparing one single-parameter increase to the baseline.
inline void append_sign_checks(const std::string& parameter_name, const ScenarioOutcome& base,
                               const ScenarioOutcome& alt, std::vector<SignCheck>& out) {
  const TableColumn& b = *base.solved;
  const TableColumn& a = *alt.solved;
  auto at = [](const TableColumn& c, TableRow r) { return c[index(r)]; };
  auto check = [&](std::string what, bool ok) { out.push_back({alt.name, std::move(what), ok}); };
  auto up = [&](TableRow r) { return at(a, r) > at(b, r); };
  auto down = [&](TableRow r) { return at(a, r) < at(b, r); };
  const double deficit_base = std::abs(at(b, TableRow::trade_balance_0));
  const double deficit_alt = std::abs(at(a, TableRow::trade_balance_0));

  if (parameter_name == "gamma") {
    check("gamma up: r unchanged", at(a, TableRow::rate) == at(b, TableRow::rate));
    check("gamma up: I0 unchanged", at(a, TableRow::investment_0) == at(b, TableRow::investment_0));
    check("gamma up: |d tb0| < 0.5% of Y0",
          std::abs(at(a, TableRow::trade_balance_0) - at(b, TableRow::trade_balance_0)) <
              0.005 * at(b, TableRow::output_0));
  } else if (parameter_name == "theta") {
    check("theta up: r up", up(TableRow::rate));
    check("theta up: w0 down", down(TableRow::wage_0));
    check("theta up: Y0 up", up(TableRow::output_0));
    check("theta up: l0 up", up(TableRow::hours_0));
  } else if (parameter_name == "rho") {
    check("rho up: r up", up(TableRow::rate));
    check("rho up: l0 up", up(TableRow::hours_0));
    check("rho up: Y0 up", up(TableRow::output_0));
    check("rho up: I0 down", down(TableRow::investment_0));
    check("rho up: C0 down", down(TableRow::consumption_0));
    check("rho up: w0 down", down(TableRow::wage_0));
    check("rho up: present deficit down", deficit_alt < deficit_base);
  } else if (parameter_name == "A1") {
    check("A1 up: r up", up(TableRow::rate));
    check("A1 up: I0 up", up(TableRow::investment_0));
    check("A1 up: C0 up", up(TableRow::consumption_0));
    check("A1 up: w0 up", up(TableRow::wage_0));
    check("A1 up: w1 up", up(TableRow::wage_1));
    check("A1 up: l0 down", down(TableRow::hours_0));
    check("A1 up: Y0 down", down(TableRow::output_0));
    check("A1 up: present deficit up", deficit_alt > deficit_base);
  }
}

}  // namespace detail

/// Solves every scenario in order. A failing scenario is recorded and the
/// suite continues. Sign checks run for each single-parameter increase of
/// gamma, theta, rho or A1 against the first unperturbed scenario.
inline SuiteReport run_suite(const ModelInstance& base, const std::vector<Scenario>& scenarios) {
  SuiteReport report;
  for (const auto& s : scenarios) {
    ScenarioOutcome outcome;
    outcome.name = s.name;
    outcome.rate = s.rate;
    outcome.reference = s.reference;
    try {
      const ModelInstance m = apply_scenario(base, s);
      if (s.closure) outcome.rate = resolve_rate(m, *s.closure).rate;
      const TableColumn solved = report_row(solve_at_rate(m, outcome.rate), m);
      outcome.solved = solved;
      if (s.reference) {
        for (std::size_t i = 0; i < kTableRows; ++i) {
          outcome.deviation[i] = relative_deviation(solved[i], s.reference->expected[i]);
          outcome.cell_pass[i] = outcome.deviation[i] <= s.reference->tolerance;
        }
      }
    } catch (const Error& e) {
      outcome.error = e.what();
    }
    report.scenarios.push_back(std::move(outcome));
  }

  const ScenarioOutcome* baseline = nullptr;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (detail::is_unperturbed(scenarios[i]) && report.scenarios[i].solved) {
      baseline = &report.scenarios[i];
      break;
    }
  }
  if (baseline) {
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      if (!report.scenarios[i].solved) continue;
      std::string name;
      try {
        name = detail::single_increase(scenarios[i]);
      } catch (const Error&) {
        continue;
      }
      if (!name.empty())
        detail::append_sign_checks(name, *baseline, report.scenarios[i], report.sign_checks);
    }
  }
  return report;
}

}  // namespace ratectl
