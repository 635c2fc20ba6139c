// Finds the balanced-trade rate of the baseline economy and compares the
// equilibrium there with the one at the reference baseline rate.

#include <cstdio>

#include "ratectl/closure.hpp"
#include "ratectl/model.hpp"

int main() {
  const ratectl::ModelInstance economy = ratectl::baseline_instance();

  ratectl::ClosureSpec spec;
  spec.kind = ratectl::ClosureKind::balanced_trade;
  spec.bracket = {0.4821, 2.0};
  const auto closure = ratectl::resolve_rate(economy, spec);

  for (double r : {0.4821, closure.rate}) {
    const auto eq = ratectl::solve_at_rate(economy, r);
    std::printf("r = %.6f (%.4f per year)  I0 = %9.2f  S0N = %9.2f  S1x = %9.2f  tb0 = %9.2f\n",
                r, ratectl::annualize_rate(r, economy.years_per_period), eq.i0, eq.s0n, eq.s1x,
                eq.present.trade_balance);
  }
  std::printf("bisection: %d iterations\n", closure.diagnostics.iterations);
  return 0;
}
