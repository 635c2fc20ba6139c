#pragma once

/// \file
/// Strategies for choosing the control rate. The equilibrium is consistent at
/// every admissible rate, so each strategy is an extra condition layered on top
/// of solve_at_rate, never part of it.

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ratectl/errors.hpp"
#include "ratectl/model.hpp"

namespace ratectl {

enum class ClosureKind { fixed, balanced_trade, trade_share_target, welfare_sweep };

inline std::string_view to_string(ClosureKind kind) {
  switch (kind) {
    case ClosureKind::fixed: return "fixed";
    case ClosureKind::balanced_trade: return "balanced_trade";
    case ClosureKind::trade_share_target: return "trade_share_target";
    case ClosureKind::welfare_sweep: return "welfare_sweep";
  }
  return "unknown";
}

inline ClosureKind parse_closure_kind(std::string_view text) {
  for (auto k : {ClosureKind::fixed, ClosureKind::balanced_trade, ClosureKind::trade_share_target,
                 ClosureKind::welfare_sweep}) {
    if (text == to_string(k)) return k;
  }
  throw ParseError("unknown closure kind '" + std::string(text) + "'");
}

struct RateBracket {
  double lo = 0.01;
  double hi = 2.0;
};

struct ClosureSpec {
  ClosureKind kind = ClosureKind::fixed;
  double fixed_rate = 0.0;
  double target_share = 0.0;  ///< tb0/Y0 target for trade_share_target
  RateBracket bracket;
  double tolerance = 1e-10;
  int max_iterations = 200;
  std::vector<double> grid;  ///< candidate rates for welfare_sweep
};

struct ClosureDiagnostics {
  int iterations = 0;
  int evaluations = 0;       ///< number of solve_at_rate calls
  double residual = 0.0;     ///< objective value at the returned rate
  RateBracket final_bracket;
  std::vector<std::pair<double, double>> sweep;  ///< (rate, welfare) in grid order
};

struct ClosureResult {
  double rate = 0.0;
  ClosureDiagnostics diagnostics;
};

struct BisectionReport {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  int evaluations = 0;
  RateBracket final_bracket;
};

/// Bisection on [lo, hi] until |f(mid)| <= tolerance. Requires a sign change.
template <typename Function>
BisectionReport bisect(Function&& f, double lo, double hi, double tolerance, int max_iterations) {
  BisectionReport report;
  double f_lo = f(lo);
  double f_hi = f(hi);
  report.evaluations = 2;
  if (std::abs(f_lo) <= tolerance) {
    report.root = lo;
    report.residual = f_lo;
    report.final_bracket = {lo, hi};
    return report;
  }
  if (std::abs(f_hi) <= tolerance) {
    report.root = hi;
    report.residual = f_hi;
    report.final_bracket = {lo, hi};
    return report;
  }
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NoSignChangeError("objective has the same sign at both ends of [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  for (int it = 1; it <= max_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // bracket exhausted at machine precision
    const double f_mid = f(mid);
    ++report.evaluations;
    report.iterations = it;
    if (std::abs(f_mid) <= tolerance) {
      report.root = mid;
      report.residual = f_mid;
      report.final_bracket = {lo, hi};
      return report;
    }
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  throw NonConvergenceError("bisection did not reach tolerance " + std::to_string(tolerance) +
                            " after " + std::to_string(report.iterations) + " iterations");
}

inline void validate(const ClosureSpec& spec, const Technology& tech) {
  if (!(spec.tolerance > 0.0)) throw DomainError("closure tolerance must be > 0");
  if (spec.max_iterations <= 0) throw DomainError("closure max_iterations must be > 0");
  switch (spec.kind) {
    case ClosureKind::fixed:
      require_admissible_rate(tech, spec.fixed_rate);
      break;
    case ClosureKind::balanced_trade:
    case ClosureKind::trade_share_target:
      if (!(spec.bracket.lo < spec.bracket.hi))
        throw DomainError("closure bracket requires lo < hi");
      require_admissible_rate(tech, spec.bracket.lo);
      require_admissible_rate(tech, spec.bracket.hi);
      break;
    case ClosureKind::welfare_sweep:
      if (spec.grid.empty()) throw DomainError("welfare_sweep requires a non-empty grid");
      for (double r : spec.grid) require_admissible_rate(tech, r);
      break;
  }
}

/// Selects r according to the closure rule. fixed never evaluates the model.
inline ClosureResult resolve_rate(const ModelInstance& m, const ClosureSpec& spec) {
  validate(m);
  validate(spec, m.technology);
  ClosureResult result;
  auto& diag = result.diagnostics;

  switch (spec.kind) {
    case ClosureKind::fixed:
      result.rate = spec.fixed_rate;
      return result;

    case ClosureKind::balanced_trade:
    case ClosureKind::trade_share_target: {
      const double target = spec.kind == ClosureKind::balanced_trade ? 0.0 : spec.target_share;
      auto objective = [&](double r) {
        const Equilibrium eq = solve_at_rate(m, r);
        return eq.present.trade_balance / eq.present.y - target;
      };
      const BisectionReport b = bisect(objective, spec.bracket.lo, spec.bracket.hi,
                                       spec.tolerance, spec.max_iterations);
      result.rate = b.root;
      diag.iterations = b.iterations;
      diag.evaluations = b.evaluations;
      diag.residual = b.residual;
      diag.final_bracket = b.final_bracket;
      return result;
    }

    case ClosureKind::welfare_sweep: {
      bool found = false;
      double best_u = 0.0;
      for (double r : spec.grid) {
        const double u = solve_at_rate(m, r).welfare;
        ++diag.evaluations;
        diag.sweep.emplace_back(r, u);
        // Ties go to the lowest rate regardless of grid order.
        if (!found || u > best_u || (u == best_u && r < result.rate)) {
          found = true;
          best_u = u;
          result.rate = r;
        }
      }
      diag.residual = best_u;
      return result;
    }
  }
  return result;
}

/// Labor-disutility weight that makes the present-hours rule coincide with the
/// household's intratemporal optimum phi l0^theta = c0^(-gamma) w0 at rate r.
/// phi drops out of every equilibrium equation, so it is free to calibrate.
inline double implied_labor_weight(const ModelInstance& m, double r) {
  const Equilibrium eq = solve_at_rate(m, r);
  const double log_phi = -m.preferences.gamma * std::log(eq.present.c) +
                         std::log(eq.present.wage) - m.preferences.theta * std::log(eq.present.hours);
  return std::exp(log_phi);
}

/// Central difference quotient of lifetime utility across r_star.
inline double welfare_stationarity_check(const ModelInstance& m, double r_star, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be > 0");
  require_admissible_rate(m.technology, r_star - h);
  const double up = solve_at_rate(m, r_star + h).welfare;
  const double down = solve_at_rate(m, r_star - h).welfare;
  return (up - down) / (2.0 * h);
}

}  // namespace ratectl
