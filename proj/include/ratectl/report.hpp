#pragma once

/// \file
/// CSV and JSON emitters. Numbers carry 6 significant digits in CSV and 15 in
/// JSON so that identical inputs give byte-identical reports.

#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "ratectl/closure.hpp"
#include "ratectl/model.hpp"
#include "ratectl/schedules.hpp"
#include "ratectl/statics.hpp"

namespace ratectl {

using Json = nlohmann::ordered_json;

inline std::string csv_number(double v) { return fmt::format("{:.6g}", v); }

/// Rounded to 15 significant digits; the JSON writer then prints the shortest
/// representation of that value. Non-finite values become null.
inline Json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(fmt::format("{:.15g}", v));
}

namespace detail {

template <typename Visitor>
void visit_equilibrium(const Equilibrium& eq, Visitor&& field) {
  const auto& a = eq.present;
  const auto& b = eq.future;
  field("r", eq.r);
  field("y0", a.y);
  field("y1", b.y);
  field("k0", a.k);
  field("k1", b.k);
  field("L0", a.hours_total);
  field("L1", b.hours_total);
  field("l0", a.hours);
  field("l1", b.hours);
  field("w0", a.wage);
  field("w1", b.wage);
  field("c0", a.c);
  field("c1", b.c);
  field("C0", a.c_total);
  field("C1", b.c_total);
  field("x0", a.dividend);
  field("x1", b.dividend);
  field("tax0", a.tax);
  field("tax1", b.tax);
  field("T0", a.tax_total);
  field("T1", b.tax_total);
  field("G0", a.purchases);
  field("G1", b.purchases);
  field("tb0", a.trade_balance);
  field("tb1", b.trade_balance);
  field("i0", eq.i0);
  field("q", eq.q);
  field("pv_income", eq.pv_income);
  field("s0n", eq.s0n);
  field("s1x", eq.s1x);
  field("welfare", eq.welfare);
  field("walras_residual", walras_residual(eq));
}

}  // namespace detail

inline Json equilibrium_json(const Equilibrium& eq) {
  Json j = Json::object();
  detail::visit_equilibrium(eq, [&](const char* key, double v) { j[key] = json_number(v); });
  j["l0_binding"] = eq.l0_binding;
  return j;
}

inline void write_equilibrium_csv(std::ostream& out, const Equilibrium& eq) {
  out << "quantity,value\n";
  detail::visit_equilibrium(eq, [&](const char* key, double v) {
    out << key << ',' << csv_number(v) << '\n';
  });
  out << "l0_binding," << (eq.l0_binding ? "true" : "false") << '\n';
}

inline Json closure_json(const ClosureSpec& spec, const ClosureResult& result) {
  Json j = Json::object();
  j["kind"] = std::string(to_string(spec.kind));
  j["rate"] = json_number(result.rate);
  j["iterations"] = result.diagnostics.iterations;
  j["evaluations"] = result.diagnostics.evaluations;
  j["residual"] = json_number(result.diagnostics.residual);
  if (spec.kind == ClosureKind::balanced_trade || spec.kind == ClosureKind::trade_share_target) {
    j["bracket"] = Json::array({json_number(result.diagnostics.final_bracket.lo),
                                json_number(result.diagnostics.final_bracket.hi)});
  }
  if (!result.diagnostics.sweep.empty()) {
    Json sweep = Json::array();
    for (const auto& [r, u] : result.diagnostics.sweep)
      sweep.push_back(Json{{"r", json_number(r)}, {"welfare", json_number(u)}});
    j["sweep"] = sweep;
  }
  return j;
}

/// Table layout: one column per scenario, one row per result label, followed by
/// a cell-by-cell comparison block and the directional checks.
inline void write_suite_csv(std::ostream& out, const SuiteReport& report) {
  out << "row";
  for (const auto& s : report.scenarios) out << ',' << s.name;
  out << '\n';
  for (const auto& info : kRowInfo) {
    out << info.label;
    for (const auto& s : report.scenarios)
      out << ',' << (s.solved ? csv_number((*s.solved)[index(info.row)]) : std::string("NA"));
    out << '\n';
  }
  out << "\nscenario,row,solved,reference,deviation,status\n";
  for (const auto& s : report.scenarios) {
    if (!s.error.empty()) {
      out << s.name << ",,,,,error: " << s.error << '\n';
      continue;
    }
    if (!s.reference) continue;
    for (const auto& info : kRowInfo) {
      const std::size_t i = index(info.row);
      out << s.name << ',' << info.label << ',' << csv_number((*s.solved)[i]) << ','
          << csv_number(s.reference->expected[i]) << ',' << csv_number(s.deviation[i]) << ','
          << (s.cell_pass[i] ? "pass" : "FAIL") << '\n';
    }
  }
  if (!report.sign_checks.empty()) {
    out << "\nscenario,sign_check,status\n";
    for (const auto& c : report.sign_checks)
      out << c.scenario << ',' << c.description << ',' << (c.passed ? "pass" : "FAIL") << '\n';
  }
}

inline Json suite_json(const SuiteReport& report) {
  Json scenarios = Json::array();
  for (const auto& s : report.scenarios) {
    Json js = Json::object();
    js["name"] = s.name;
    js["rate"] = json_number(s.rate);
    if (!s.error.empty()) js["error"] = s.error;
    if (s.solved) {
      Json rows = Json::object();
      for (const auto& info : kRowInfo) {
        const std::size_t i = index(info.row);
        Json cell = Json::object();
        cell["label"] = std::string(info.label);
        cell["solved"] = json_number((*s.solved)[i]);
        if (s.reference) {
          cell["reference"] = json_number(s.reference->expected[i]);
          cell["deviation"] = json_number(s.deviation[i]);
          cell["pass"] = s.cell_pass[i];
        }
        rows[std::string(info.key)] = cell;
      }
      js["rows"] = rows;
    }
    js["passed"] = s.passed();
    scenarios.push_back(js);
  }
  Json checks = Json::array();
  for (const auto& c : report.sign_checks)
    checks.push_back(Json{{"scenario", c.scenario}, {"check", c.description}, {"pass", c.passed}});
  Json j = Json::object();
  j["scenarios"] = scenarios;
  j["sign_checks"] = checks;
  j["passed"] = report.passed();
  return j;
}

inline void write_schedule_csv(std::ostream& out, const ScheduleCurve& curve) {
  out << "r,I0,S0N,S1X,residual\n";
  for (const auto& p : curve.points)
    out << csv_number(p.r) << ',' << csv_number(p.i0) << ',' << csv_number(p.s0n) << ','
        << csv_number(p.s1x) << ',' << csv_number(p.residual) << '\n';
}

inline Json schedule_json(const ScheduleCurve& curve, const SlopeReport* slopes) {
  Json j = Json::object();
  j["mode"] = curve.mode == ScheduleMode::partial ? "partial" : "full";
  if (curve.reference_rate) j["reference_rate"] = json_number(*curve.reference_rate);
  Json points = Json::array();
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    points.push_back(Json{{"r", json_number(p.r)},
                          {"I0", json_number(p.i0)},
                          {"S0N", json_number(p.s0n)},
                          {"S1X", json_number(p.s1x)},
                          {"residual", json_number(p.residual)},
                          {"slope_I0", json_number(curve.slope_i0[i])},
                          {"slope_S0N", json_number(curve.slope_s0n[i])},
                          {"slope_S1X", json_number(curve.slope_s1x[i])},
                          {"slope_saving", json_number(curve.slope_saving[i])}});
  }
  j["points"] = points;
  Json skipped = Json::array();
  for (const auto& [r, why] : curve.skipped)
    skipped.push_back(Json{{"r", json_number(r)}, {"error", why}});
  j["skipped"] = skipped;
  j["complete"] = curve.complete();
  if (slopes) {
    j["investment_decreasing"] = slopes->investment_decreasing;
    j["saving_increasing"] = slopes->saving_increasing;
    j["flagged_segments"] = slopes->flagged;
  }
  return j;
}

}  // namespace ratectl
