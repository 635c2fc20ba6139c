#pragma once

/// \file
/// Reference comparative-statics results for the baseline economy and four
/// single-parameter +15% perturbations, with the rate each was reported at.

#include <array>
#include <string>
#include <vector>

#include "ratectl/statics.hpp"

namespace ratectl {

inline constexpr double kPerturbationFactor = 1.15;

struct ReferenceScenario {
  const char* name;
  const char* perturbed;  ///< parameter raised by kPerturbationFactor, or nullptr
  TableColumn expected;   ///< rows in TableRow order
};

// clang-format off
inline constexpr std::array<ReferenceScenario, 5> kReferenceTable{{
    {"Baseline", nullptr,
     {-14948.74, 0.4821, 0.0249, 33504.96, 99316.97, 96492.12, 29320.00, 77935.89, 77161.10,
      0.3472, 0.8077, 1.4459, -0.1549, 0.1646, 0.3413, 0.1687}},
    {"Esc. II", "gamma",
     {-14908.06, 0.4821, 0.0249, 33504.96, 99316.97, 96492.12, 29320.00, 77895.21, 77221.39,
      0.3472, 0.8073, 1.4459, -0.1545, 0.1646, 0.3413, 0.1687}},
    {"Esc. III", "theta",
     {-14812.42, 0.4839, 0.0250, 33424.65, 99197.87, 96527.31, 29341.39, 77915.08, 77217.68,
      0.3463, 0.8072, 1.4488, -0.1535, 0.1645, 0.3399, 0.1685}},
    {"Esc. IV", "rho",
     {-11359.92, 0.5560, 0.0280, 30397.05, 94598.58, 96739.03, 29470.25, 77701.90, 76921.99,
      0.3142, 0.8032, 1.5896, -0.1174, 0.1641, 0.2952, 0.1607}},
    {"Esc. V", "A1",
     {-21991.62, 0.4979, 0.0256, 37722.37, 113010.11, 95891.88, 28956.36, 80161.13, 80068.45,
      0.3934, 0.8360, 1.2923, -0.2293, 0.1656, 0.3325, 0.1919}},
}};
// clang-format on

/// The five reference scenarios, each at its tabulated rate.
inline std::vector<Scenario> reference_suite(double tolerance = kDefaultTableTolerance) {
  std::vector<Scenario> out;
  for (const auto& ref : kReferenceTable) {
    Scenario s;
    s.name = ref.name;
    if (ref.perturbed) s.perturbations[ref.perturbed] = kPerturbationFactor;
    s.rate = ref.expected[index(TableRow::rate)];
    s.reference = ReferenceRow{ref.expected, tolerance};
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ratectl
