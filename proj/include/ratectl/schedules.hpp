#pragma once

/// \file
/// Investment and saving schedules over a grid of rates.
///
/// In full_equilibrium mode every point is a complete equilibrium, so national
/// plus external saving equals investment at every rate and the schedules
/// coincide. In partial mode the household's per-period net incomes, outputs
/// and government purchases are frozen at a reference rate; the rate still
/// moves the discounting of future income, the consumption denominator q and
/// the Euler factor, and external saving is valued at the reference rate. The
/// saving sum then slopes upward and crosses the investment schedule at the
/// reference rate, reproducing the usual saving/investment diagram.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratectl/errors.hpp"
#include "ratectl/model.hpp"

namespace ratectl {

enum class ScheduleMode { full_equilibrium, partial };

struct SchedulePoint {
  double r = 0.0;
  double i0 = 0.0;
  double s0n = 0.0;
  double s1x = 0.0;
  double residual = 0.0;  ///< s0n + s1x - i0
  double y0 = 0.0;
};

struct ScheduleCurve {
  ScheduleMode mode = ScheduleMode::full_equilibrium;
  std::optional<double> reference_rate;
  std::vector<SchedulePoint> points;
  /// Central-difference slopes per retained point (one-sided at the ends).
  std::vector<double> slope_i0;
  std::vector<double> slope_s0n;
  std::vector<double> slope_s1x;
  std::vector<double> slope_saving;  ///< d(s0n + s1x)/dr
  std::vector<std::pair<double, std::string>> skipped;  ///< rate, error message

  [[nodiscard]] bool complete() const { return skipped.empty(); }
};

/// `points` evenly spaced rates from start to stop inclusive.
inline std::vector<double> linear_grid(double start, double stop, std::size_t points) {
  if (points < 2) throw DomainError("a grid needs at least 2 points");
  if (!(start < stop)) throw DomainError("grid start must be below grid stop");
  std::vector<double> grid(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = start + step * static_cast<double>(i);
  grid.back() = stop;
  return grid;
}

/// 41 points on [max(0.01, r_ref - 0.2), r_ref + 0.2].
inline std::vector<double> default_grid(double reference_rate) {
  return linear_grid(std::max(0.01, reference_rate - 0.2), reference_rate + 0.2, 41);
}

namespace detail {

inline std::vector<double> central_slopes(const std::vector<SchedulePoint>& pts,
                                          double SchedulePoint::*field) {
  std::vector<double> out(pts.size(), 0.0);
  if (pts.size() < 2) return out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == pts.size() ? i : i + 1;
    out[i] = (pts[hi].*field - pts[lo].*field) / (pts[hi].r - pts[lo].r);
  }
  return out;
}

}  // namespace detail

inline ScheduleCurve compute_schedules(const ModelInstance& m, const std::vector<double>& grid,
                                       ScheduleMode mode,
                                       std::optional<double> reference_rate = std::nullopt) {
  validate(m);
  if (grid.empty()) throw DomainError("schedule grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("schedule grid must be strictly increasing");

  ScheduleCurve curve;
  curve.mode = mode;
  curve.reference_rate = reference_rate;

  if (mode == ScheduleMode::full_equilibrium) {
    for (double r : grid) {
      try {
        const Equilibrium eq = solve_at_rate(m, r);
        curve.points.push_back(
            {r, eq.i0, eq.s0n, eq.s1x, eq.s0n + eq.s1x - eq.i0, eq.present.y});
      } catch (const Error& e) {
        curve.skipped.emplace_back(r, e.what());
      }
    }
  } else {
    if (!reference_rate) throw DomainError("partial schedules need a reference rate");
    const double r_ref = *reference_rate;
    if (r_ref < grid.front() || r_ref > grid.back())
      throw DomainError("reference rate lies outside the schedule grid");
    const Equilibrium ref = solve_at_rate(m, r_ref);
    const double income_0 = household_net_income(ref.present);
    const double income_1 = household_net_income(ref.future);
    const auto& d = m.demography;
    for (double r : grid) {
      try {
        require_admissible_rate(m.technology, r);
        SchedulePoint p;
        p.r = r;
        p.y0 = ref.present.y;
        p.i0 = capital_demand(m.technology, ref.future.hours_total, r) -
               (1.0 - m.technology.delta) * m.k0;
        const double pv = present_value_income(income_0, income_1, r);
        if (!(pv > 0.0)) throw InfeasibleError("frozen present-value income is not positive");
        const double c0 = pv / q_factor(m.preferences, r);
        const double c1 = c0 * euler_growth(m.preferences, r);
        p.s0n = ref.present.y - d.n0 * c0 - ref.present.purchases;
        p.s1x = (ref.future.y - d.n1 * c1 - ref.future.purchases) / (1.0 + r_ref);
        p.residual = p.s0n + p.s1x - p.i0;
        curve.points.push_back(p);
      } catch (const Error& e) {
        curve.skipped.emplace_back(r, e.what());
      }
    }
  }

  curve.slope_i0 = detail::central_slopes(curve.points, &SchedulePoint::i0);
  curve.slope_s0n = detail::central_slopes(curve.points, &SchedulePoint::s0n);
  curve.slope_s1x = detail::central_slopes(curve.points, &SchedulePoint::s1x);
  curve.slope_saving.resize(curve.points.size());
  for (std::size_t i = 0; i < curve.points.size(); ++i)
    curve.slope_saving[i] = curve.slope_s0n[i] + curve.slope_s1x[i];
  return curve;
}

struct SegmentSlope {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double saving = 0.0;      ///< d(s0n + s1x)/dr over the segment
  double investment = 0.0;  ///< d(i0)/dr over the segment
  bool flagged = false;     ///< saving sum decreasing in partial mode
};

struct SlopeReport {
  std::vector<SegmentSlope> segments;
  std::size_t flagged = 0;
  bool investment_decreasing = true;  ///< every segment has d(i0)/dr < 0
  bool saving_increasing = true;      ///< every segment has d(s0n + s1x)/dr > 0
};

/// Per-segment slope signs. In partial mode a segment where the saving sum
/// falls with r violates the local-stability requirement and is flagged.
inline SlopeReport slope_check(const ScheduleCurve& curve) {
  if (curve.points.size() < 3) throw DomainError("slope check needs at least 3 points");
  SlopeReport report;
  for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
    const auto& a = curve.points[i];
    const auto& b = curve.points[i + 1];
    SegmentSlope seg;
    seg.r_lo = a.r;
    seg.r_hi = b.r;
    const double dr = b.r - a.r;
    seg.saving = ((b.s0n + b.s1x) - (a.s0n + a.s1x)) / dr;
    seg.investment = (b.i0 - a.i0) / dr;
    seg.flagged = curve.mode == ScheduleMode::partial && seg.saving < 0.0;
    if (seg.flagged) ++report.flagged;
    if (!(seg.investment < 0.0)) report.investment_decreasing = false;
    if (!(seg.saving > 0.0)) report.saving_increasing = false;
    report.segments.push_back(seg);
  }
  return report;
}

}  // namespace ratectl
