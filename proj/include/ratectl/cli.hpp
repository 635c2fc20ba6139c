#pragma once

/// \file
/// Command dispatch for the `ratectl` tool. Parsing argv into a RunConfig and
/// executing it are separate so both can be driven from tests.
///
/// Exit status: 0 success, 1 a tolerance or acceptance check failed,
/// 2 invalid input (parse, domain, or infeasibility error).

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ratectl/acceptance.hpp"
#include "ratectl/closure.hpp"
#include "ratectl/config.hpp"
#include "ratectl/errors.hpp"
#include "ratectl/model.hpp"
#include "ratectl/reference.hpp"
#include "ratectl/report.hpp"
#include "ratectl/schedules.hpp"
#include "ratectl/statics.hpp"

namespace ratectl::cli {

enum class Command { solve, table, sweep, schedules, check };
enum class OutputFormat { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitToleranceFailure = 1;
inline constexpr int kExitInvalidInput = 2;

/// Reference rate used by `schedules` when --rate is not given.
inline constexpr double kDefaultScheduleRate = 0.4821;

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 0;
};

struct RunConfig {
  Command command = Command::solve;
  std::optional<std::string> instance_file;
  std::optional<std::string> scenario_file;
  std::optional<double> rate;
  std::optional<ClosureKind> closure;
  std::optional<RateBracket> bracket;
  std::optional<double> target_share;
  std::optional<GridSpec> grid;
  ScheduleMode mode = ScheduleMode::full_equilibrium;
  OutputFormat format = OutputFormat::csv;
  std::optional<double> tolerance;
};

inline GridSpec parse_grid(const std::string& text) {
  const auto v = parse_number_list(text);
  if (v.size() != 3) throw ParseError("--grid expects start,stop,points");
  if (!(v[2] >= 2.0) || v[2] != std::floor(v[2]))
    throw ParseError("--grid points must be an integer >= 2");
  return {v[0], v[1], static_cast<std::size_t>(v[2])};
}

inline RateBracket parse_bracket(const std::string& text) {
  const auto v = parse_number_list(text);
  if (v.size() != 2) throw ParseError("--bracket expects lo,hi");
  return {v[0], v[1]};
}

/// Parses argv. Returns nullopt after printing help (exit 0); throws
/// ParseError for invalid flags.
inline std::optional<RunConfig> parse_command_line(int argc, const char* const* argv,
                                                   std::ostream& out) {
  CLI::App app{"Two-period open-economy model with the real interest rate as a control variable"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string rate, closure, bracket, target, grid, mode, format, tol, instance, scenario;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--instance-file", instance, "economy parameters (section.key = value)");
    sub->add_option("--format", format, "csv | json");
  };

  auto* solve = app.add_subcommand("solve", "solve the equilibrium at a given rate");
  add_common(solve);
  solve->add_option("--rate", rate, "real interest rate per period")->required();

  auto* table = app.add_subcommand("table", "comparative-statics table against reference values");
  add_common(table);
  table->add_option("--scenario-file", scenario, "scenario file (default: reference suite)");
  table->add_option("--tol", tol, "relative tolerance per cell");

  auto* sweep = app.add_subcommand("sweep", "select a rate with a closure rule and solve there");
  add_common(sweep);
  sweep->add_option("--closure", closure,
                    "fixed | balanced_trade | trade_share_target | welfare_sweep");
  sweep->add_option("--rate", rate, "rate for the fixed closure");
  sweep->add_option("--bracket", bracket, "lo,hi search interval");
  sweep->add_option("--target", target, "tb0/Y0 target for trade_share_target");
  sweep->add_option("--grid", grid, "start,stop,points for welfare_sweep");
  sweep->add_option("--tol", tol, "relative convergence tolerance");

  auto* schedules = app.add_subcommand("schedules", "investment and saving schedules over r");
  add_common(schedules);
  schedules->add_option("--rate", rate, "reference rate (default 0.4821)");
  schedules->add_option("--grid", grid, "start,stop,points");
  schedules->add_option("--mode", mode, "full | partial");
  schedules->add_option("--tol", tol, "identity tolerance relative to max Y0 (full mode)");

  auto* check = app.add_subcommand("check", "run the acceptance suite");
  check->add_option("--format", format, "csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }

  if (solve->parsed()) cfg.command = Command::solve;
  if (table->parsed()) cfg.command = Command::table;
  if (sweep->parsed()) cfg.command = Command::sweep;
  if (schedules->parsed()) cfg.command = Command::schedules;
  if (check->parsed()) cfg.command = Command::check;

  if (!rate.empty()) cfg.rate = parse_number(rate);
  if (!closure.empty()) cfg.closure = parse_closure_kind(closure);
  if (!bracket.empty()) cfg.bracket = parse_bracket(bracket);
  if (!target.empty()) cfg.target_share = parse_number(target);
  if (!grid.empty()) cfg.grid = parse_grid(grid);
  if (!tol.empty()) cfg.tolerance = parse_number(tol);
  if (!instance.empty()) cfg.instance_file = instance;
  if (!scenario.empty()) cfg.scenario_file = scenario;
  if (!mode.empty()) {
    if (mode == "full") cfg.mode = ScheduleMode::full_equilibrium;
    else if (mode == "partial") cfg.mode = ScheduleMode::partial;
    else throw ParseError("--mode must be full or partial");
  }
  if (!format.empty()) {
    if (format == "csv") cfg.format = OutputFormat::csv;
    else if (format == "json") cfg.format = OutputFormat::json;
    else throw ParseError("--format must be csv or json");
  }
  if (cfg.tolerance && !(*cfg.tolerance > 0.0)) throw ParseError("--tol must be > 0");
  return cfg;
}

namespace detail {

inline ModelInstance load_instance(const RunConfig& cfg) {
  if (!cfg.instance_file) return baseline_instance();
  std::ifstream in(*cfg.instance_file);
  if (!in) throw ParseError("cannot open instance file '" + *cfg.instance_file + "'");
  return parse_instance(in);
}

inline std::vector<Scenario> load_scenarios(const RunConfig& cfg) {
  if (!cfg.scenario_file) return reference_suite();
  std::ifstream in(*cfg.scenario_file);
  if (!in) throw ParseError("cannot open scenario file '" + *cfg.scenario_file + "'");
  auto scenarios = parse_scenarios(in);
  if (scenarios.empty()) throw ParseError("scenario file lists no scenarios");
  return scenarios;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline int run_solve(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.rate) throw ParseError("solve requires --rate");
  const Equilibrium eq = solve_at_rate(load_instance(cfg), *cfg.rate);
  if (cfg.format == OutputFormat::json) emit(out, equilibrium_json(eq));
  else write_equilibrium_csv(out, eq);
  return kExitOk;
}

inline int run_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto scenarios = load_scenarios(cfg);
  if (cfg.tolerance)
    for (auto& s : scenarios)
      if (s.reference) s.reference->tolerance = *cfg.tolerance;
  const SuiteReport report = run_suite(load_instance(cfg), scenarios);
  if (cfg.format == OutputFormat::json) emit(out, suite_json(report));
  else write_suite_csv(out, report);
  if (report.passed()) return kExitOk;
  for (const auto& s : report.scenarios) {
    if (!s.error.empty()) err << "scenario '" << s.name << "' failed: " << s.error << '\n';
    if (!s.solved || !s.reference) continue;
    for (const auto& info : kRowInfo) {
      const std::size_t i = index(info.row);
      if (!s.cell_pass[i])
        err << fmt::format("tolerance failure: {} / {}: solved {:.6g}, reference {:.6g}, "
                           "deviation {:.3e}\n",
                           s.name, info.label, (*s.solved)[i], s.reference->expected[i],
                           s.deviation[i]);
    }
  }
  for (const auto& c : report.sign_checks)
    if (!c.passed) err << "sign check failed: " << c.scenario << ": " << c.description << '\n';
  return kExitToleranceFailure;
}

inline ClosureSpec closure_from(const RunConfig& cfg) {
  ClosureSpec spec;
  spec.kind = cfg.closure.value_or(ClosureKind::balanced_trade);
  if (cfg.bracket) spec.bracket = *cfg.bracket;
  if (cfg.tolerance) spec.tolerance = *cfg.tolerance;
  if (cfg.target_share) spec.target_share = *cfg.target_share;
  switch (spec.kind) {
    case ClosureKind::fixed:
      if (!cfg.rate) throw ParseError("the fixed closure requires --rate");
      spec.fixed_rate = *cfg.rate;
      break;
    case ClosureKind::trade_share_target:
      if (!cfg.target_share) throw ParseError("trade_share_target requires --target");
      break;
    case ClosureKind::welfare_sweep:
      if (!cfg.grid) throw ParseError("welfare_sweep requires --grid");
      spec.grid = linear_grid(cfg.grid->start, cfg.grid->stop, cfg.grid->points);
      break;
    case ClosureKind::balanced_trade:
      break;
  }
  return spec;
}

inline int run_sweep(const RunConfig& cfg, std::ostream& out) {
  const ModelInstance m = load_instance(cfg);
  const ClosureSpec spec = closure_from(cfg);
  const ClosureResult result = resolve_rate(m, spec);
  const Equilibrium eq = solve_at_rate(m, result.rate);
  if (cfg.format == OutputFormat::json) {
    Json j = Json::object();
    j["closure"] = closure_json(spec, result);
    j["equilibrium"] = equilibrium_json(eq);
    emit(out, j);
  } else {
    out << "closure," << to_string(spec.kind) << '\n';
    out << "iterations," << result.diagnostics.iterations << '\n';
    out << "evaluations," << result.diagnostics.evaluations << '\n';
    out << "objective," << csv_number(result.diagnostics.residual) << '\n';
    write_equilibrium_csv(out, eq);
  }
  return kExitOk;
}

inline int run_schedules(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ModelInstance m = load_instance(cfg);
  const double r_ref = cfg.rate.value_or(kDefaultScheduleRate);
  const std::vector<double> grid =
      cfg.grid ? linear_grid(cfg.grid->start, cfg.grid->stop, cfg.grid->points)
               : default_grid(r_ref);
  const ScheduleCurve curve = compute_schedules(
      m, grid, cfg.mode,
      cfg.mode == ScheduleMode::partial ? std::optional<double>(r_ref) : std::nullopt);
  std::optional<SlopeReport> slopes;
  if (curve.points.size() >= 3) slopes = slope_check(curve);
  if (cfg.format == OutputFormat::json) emit(out, schedule_json(curve, slopes ? &*slopes : nullptr));
  else write_schedule_csv(out, curve);
  for (const auto& [r, why] : curve.skipped)
    err << "skipped r = " << r << ": " << why << '\n';
  if (cfg.mode == ScheduleMode::full_equilibrium) {
    double max_y0 = 0.0;
    double max_residual = 0.0;
    for (const auto& p : curve.points) {
      max_y0 = std::max(max_y0, p.y0);
      max_residual = std::max(max_residual, std::abs(p.residual));
    }
    const double tol = cfg.tolerance.value_or(1e-9);
    if (max_residual > tol * max_y0) {
      err << fmt::format("saving identity violated: max residual {:.3e} > {:.1e} * {:.6g}\n",
                         max_residual, tol, max_y0);
      return kExitToleranceFailure;
    }
  }
  return kExitOk;
}

inline int run_check(const RunConfig& cfg, std::ostream& out) {
  const auto results = acceptance::run_all();
  bool ok = true;
  if (cfg.format == OutputFormat::json) {
    Json arr = Json::array();
    for (const auto& c : results) {
      arr.push_back(Json{{"criterion", c.id}, {"title", c.title}, {"pass", c.passed},
                         {"detail", c.detail}});
      ok = ok && c.passed;
    }
    emit(out, arr);
  } else {
    for (const auto& c : results) {
      out << fmt::format("criterion {:>2}: {}  {} | {}\n", c.id, c.passed ? "PASS" : "FAIL",
                         c.title, c.detail);
      ok = ok && c.passed;
    }
  }
  return ok ? kExitOk : kExitToleranceFailure;
}

}  // namespace detail

/// Executes a parsed configuration. Library errors become status 2 with a
/// message on `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::solve: return detail::run_solve(cfg, out);
      case Command::table: return detail::run_table(cfg, out, err);
      case Command::sweep: return detail::run_sweep(cfg, out);
      case Command::schedules: return detail::run_schedules(cfg, out, err);
      case Command::check: return detail::run_check(cfg, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

/// argv entry point.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_command_line(argc, argv, out);
    if (!cfg) return kExitOk;
    return run(*cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace ratectl::cli
