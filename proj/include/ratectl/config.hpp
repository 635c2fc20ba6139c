#pragma once

/// \file
/// Plain-text instance and scenario files.
///
/// Instance file: one `section.key = value` per line (the bare key is also
/// accepted), `#` starts a comment. Keys left out keep their baseline value.
///
///     preferences.gamma = 1.2
///     technology.A1 = 1.15
///     economy.K0 = 31756
///
/// Scenario file: `[name]` opens a scenario; inside it
///
///     set.<param> = value          absolute override
///     perturb.<param> = factor     multiplicative perturbation
///     rate = r                     control rate
///     closure.kind = balanced_trade | trade_share_target | welfare_sweep | fixed
///     closure.bracket = lo,hi
///     closure.target_share = s
///     closure.tolerance = tol
///     closure.max_iterations = n
///     closure.grid = r1,r2,...
///     expect.<row> = value         reference value (all sixteen rows, or none)
///     expect.tolerance = tol

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ratectl/closure.hpp"
#include "ratectl/errors.hpp"
#include "ratectl/model.hpp"
#include "ratectl/parameters.hpp"
#include "ratectl/statics.hpp"

namespace ratectl {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace detail

/// Parses a whole string as a double; rejects trailing characters.
inline double parse_number(std::string_view text) {
  text = detail::trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError("not a number: '" + std::string(text) + "'");
  return value;
}

/// Comma-separated numbers.
inline std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_roundtrip(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct KeyValue {
  std::string key;
  std::string value;
};

/// Splits `key = value`; returns nullopt for blank and comment lines.
inline std::optional<KeyValue> split_key_value(std::string_view raw, std::size_t line_no) {
  const auto hash = raw.find('#');
  const std::string_view line = detail::trim(raw.substr(0, hash));
  if (line.empty()) return std::nullopt;
  const auto eq = line.find('=');
  if (eq == std::string_view::npos)
    throw ParseError(detail::at_line(line_no) + "expected 'key = value'");
  KeyValue kv{std::string(detail::trim(line.substr(0, eq))),
              std::string(detail::trim(line.substr(eq + 1)))};
  if (kv.key.empty() || kv.value.empty())
    throw ParseError(detail::at_line(line_no) + "empty key or value");
  return kv;
}

inline ModelInstance parse_instance(std::istream& in) {
  ModelInstance m = baseline_instance();
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto kv = split_key_value(raw, line_no);
    if (!kv) continue;
    try {
      parameter(m, kv->key) = parse_number(kv->value);
    } catch (const Error& e) {
      throw ParseError(detail::at_line(line_no) + e.what());
    }
  }
  validate(m);
  return m;
}

inline ModelInstance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

inline void write_instance(std::ostream& out, const ModelInstance& m) {
  for (const auto& p : kParameters)
    out << p.section << '.' << p.name << " = " << format_roundtrip(parameter(m, p.name)) << '\n';
}

namespace detail {

struct ScenarioDraft {
  Scenario scenario;
  std::size_t header_line = 0;
  bool has_rate = false;
  std::optional<ClosureSpec> closure;
  TableColumn expected{};
  std::vector<bool> expected_set = std::vector<bool>(kTableRows, false);
  std::optional<double> expect_tolerance;
};

inline Scenario finish(ScenarioDraft& d) {
  const std::string where = "scenario '" + d.scenario.name + "' (line " +
                            std::to_string(d.header_line) + "): ";
  if (d.closure) {
    d.scenario.closure = d.closure;
    if (d.closure->kind == ClosureKind::fixed) {
      if (!d.has_rate) throw ParseError(where + "closure 'fixed' needs 'rate'");
      d.scenario.closure->fixed_rate = d.scenario.rate;
    }
  } else if (!d.has_rate) {
    throw ParseError(where + "needs either 'rate' or 'closure.kind'");
  }
  std::size_t n_expected = 0;
  for (bool b : d.expected_set) n_expected += b ? 1 : 0;
  if (n_expected != 0 && n_expected != kTableRows)
    throw ParseError(where + "expect.* must list all sixteen rows or none");
  if (n_expected == 0 && d.expect_tolerance)
    throw ParseError(where + "expect.tolerance without expected rows");
  if (n_expected == kTableRows) {
    ReferenceRow ref;
    ref.expected = d.expected;
    if (d.expect_tolerance) ref.tolerance = *d.expect_tolerance;
    d.scenario.reference = ref;
  }
  for (const auto& [path, value] : d.scenario.overrides)
    for (const auto& [other, factor] : d.scenario.perturbations)
      if (&find_parameter(path) == &find_parameter(other))
        throw ParseError(where + "'" + path + "' is both set and perturbed");
  return d.scenario;
}

}  // namespace detail

inline std::vector<Scenario> parse_scenarios(std::istream& in) {
  std::vector<Scenario> out;
  std::optional<detail::ScenarioDraft> draft;
  std::string raw;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (draft) out.push_back(detail::finish(*draft));
    draft.reset();
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view stripped = detail::trim(std::string_view(raw).substr(0, raw.find('#')));
    if (!stripped.empty() && stripped.front() == '[') {
      if (stripped.back() != ']' || stripped.size() < 3)
        throw ParseError(detail::at_line(line_no) + "malformed scenario header");
      flush();
      draft.emplace();
      draft->scenario.name = std::string(detail::trim(stripped.substr(1, stripped.size() - 2)));
      draft->header_line = line_no;
      continue;
    }
    const auto kv = split_key_value(raw, line_no);
    if (!kv) continue;
    if (!draft) throw ParseError(detail::at_line(line_no) + "key outside a [scenario] block");
    const std::string_view key = kv->key;
    auto& d = *draft;
    try {
      if (key == "rate") {
        d.scenario.rate = parse_number(kv->value);
        d.has_rate = true;
      } else if (key.starts_with("set.")) {
        const auto path = key.substr(4);
        find_parameter(path);
        d.scenario.overrides[std::string(path)] = parse_number(kv->value);
      } else if (key.starts_with("perturb.")) {
        const auto path = key.substr(8);
        find_parameter(path);
        d.scenario.perturbations[std::string(path)] = parse_number(kv->value);
      } else if (key.starts_with("closure.")) {
        if (!d.closure) d.closure.emplace();
        auto& c = *d.closure;
        const auto field = key.substr(8);
        if (field == "kind") {
          c.kind = parse_closure_kind(kv->value);
        } else if (field == "bracket") {
          const auto v = parse_number_list(kv->value);
          if (v.size() != 2) throw ParseError("closure.bracket needs 'lo,hi'");
          c.bracket = {v[0], v[1]};
        } else if (field == "target_share") {
          c.target_share = parse_number(kv->value);
        } else if (field == "tolerance") {
          c.tolerance = parse_number(kv->value);
        } else if (field == "max_iterations") {
          c.max_iterations = static_cast<int>(parse_number(kv->value));
        } else if (field == "grid") {
          c.grid = parse_number_list(kv->value);
        } else {
          throw ParseError("unknown closure field '" + std::string(field) + "'");
        }
      } else if (key == "expect.tolerance") {
        d.expect_tolerance = parse_number(kv->value);
      } else if (key.starts_with("expect.")) {
        const auto row = index(parse_row_key(key.substr(7)));
        d.expected[row] = parse_number(kv->value);
        d.expected_set[row] = true;
      } else {
        throw ParseError("unknown key '" + std::string(key) + "'");
      }
    } catch (const Error& e) {
      throw ParseError(detail::at_line(line_no) + e.what());
    }
  }
  flush();
  return out;
}

inline std::vector<Scenario> parse_scenarios(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_scenarios(in);
}

inline void write_scenarios(std::ostream& out, const std::vector<Scenario>& scenarios) {
  bool first = true;
  for (const auto& s : scenarios) {
    if (!first) out << '\n';
    first = false;
    out << '[' << s.name << "]\n";
    for (const auto& [path, value] : s.overrides)
      out << "set." << path << " = " << format_roundtrip(value) << '\n';
    for (const auto& [path, factor] : s.perturbations)
      out << "perturb." << path << " = " << format_roundtrip(factor) << '\n';
    if (!s.closure || s.closure->kind == ClosureKind::fixed)
      out << "rate = " << format_roundtrip(s.rate) << '\n';
    if (s.closure) {
      const auto& c = *s.closure;
      out << "closure.kind = " << to_string(c.kind) << '\n';
      out << "closure.bracket = " << format_roundtrip(c.bracket.lo) << ','
          << format_roundtrip(c.bracket.hi) << '\n';
      out << "closure.target_share = " << format_roundtrip(c.target_share) << '\n';
      out << "closure.tolerance = " << format_roundtrip(c.tolerance) << '\n';
      out << "closure.max_iterations = " << c.max_iterations << '\n';
      if (!c.grid.empty()) {
        out << "closure.grid = ";
        for (std::size_t i = 0; i < c.grid.size(); ++i)
          out << (i ? "," : "") << format_roundtrip(c.grid[i]);
        out << '\n';
      }
    }
    if (s.reference) {
      for (const auto& info : kRowInfo)
        out << "expect." << info.key << " = "
            << format_roundtrip(s.reference->expected[index(info.row)]) << '\n';
      out << "expect.tolerance = " << format_roundtrip(s.reference->tolerance) << '\n';
    }
  }
}

}  // namespace ratectl
