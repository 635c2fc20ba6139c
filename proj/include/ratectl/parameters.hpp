#pragma once

/// \file
/// Named access to the scalar parameters of a ModelInstance. The names mirror
/// the calibration tables (alpha, gamma, A0, K0, tax0, ...) and are shared by
/// the instance file, the scenario file, and scenario perturbations.

#include <array>
#include <string>
#include <string_view>

#include "ratectl/errors.hpp"
#include "ratectl/model.hpp"

namespace ratectl {

struct ParameterInfo {
  std::string_view section;
  std::string_view name;
  double ModelInstance::*top = nullptr;  // set for fields stored directly on the instance
  double Preferences::*preferences = nullptr;
  double Technology::*technology = nullptr;
  double Demography::*demography = nullptr;
  double Fiscal::*fiscal = nullptr;
};

inline constexpr std::array<ParameterInfo, 17> kParameters{{
    {"preferences", "gamma", nullptr, &Preferences::gamma},
    {"preferences", "theta", nullptr, &Preferences::theta},
    {"preferences", "rho", nullptr, &Preferences::rho},
    {"preferences", "phi", nullptr, &Preferences::phi},
    {"technology", "alpha", nullptr, nullptr, &Technology::alpha},
    {"technology", "delta", nullptr, nullptr, &Technology::delta},
    {"technology", "A0", nullptr, nullptr, &Technology::a0},
    {"technology", "A1", nullptr, nullptr, &Technology::a1},
    {"demography", "N0", nullptr, nullptr, nullptr, &Demography::n0},
    {"demography", "N1", nullptr, nullptr, nullptr, &Demography::n1},
    {"demography", "l0_max", nullptr, nullptr, nullptr, &Demography::l0_max},
    {"demography", "l1_max", nullptr, nullptr, nullptr, &Demography::l1_max},
    {"fiscal", "tax0", nullptr, nullptr, nullptr, nullptr, &Fiscal::t0},
    {"fiscal", "G0", nullptr, nullptr, nullptr, nullptr, &Fiscal::g0},
    {"fiscal", "G1", nullptr, nullptr, nullptr, nullptr, &Fiscal::g1},
    {"economy", "K0", &ModelInstance::k0},
    {"economy", "years_per_period", &ModelInstance::years_per_period},
}};

/// Finds a parameter by bare name ("gamma") or qualified path ("preferences.gamma").
inline const ParameterInfo& find_parameter(std::string_view path) {
  for (const auto& p : kParameters) {
    if (path == p.name) return p;
    if (path.size() == p.section.size() + 1 + p.name.size() && path.starts_with(p.section) &&
        path[p.section.size()] == '.' && path.ends_with(p.name))
      return p;
  }
  throw UnknownPathError("unknown parameter '" + std::string(path) + "'");
}

inline double& parameter(ModelInstance& m, const ParameterInfo& p) {
  if (p.top) return m.*(p.top);
  if (p.preferences) return m.preferences.*(p.preferences);
  if (p.technology) return m.technology.*(p.technology);
  if (p.demography) return m.demography.*(p.demography);
  return m.fiscal.*(p.fiscal);
}

inline double& parameter(ModelInstance& m, std::string_view path) {
  return parameter(m, find_parameter(path));
}

inline double parameter(const ModelInstance& m, std::string_view path) {
  ModelInstance copy = m;
  return parameter(copy, find_parameter(path));
}

}  // namespace ratectl
