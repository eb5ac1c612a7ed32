#include "detmodes/nse/audit.hpp"

#include <algorithm>
#include <cmath>

#include "detmodes/errors.hpp"
#include "detmodes/lp/norms.hpp"

namespace detmodes::nse {

EnstrophyBudget enstrophy_budget(const std::vector<FlowState>& history, const Forcing& forcing) {
  if (history.size() < 2) throw InsufficientDataError("enstrophy balance needs at least two states");
  const FlowState& first = history.front();
  for (const auto& s : history) {
    lp::require_same_grid(first.grid(), s.grid(), "enstrophy_budget");
    if (s.nu != first.nu) throw MismatchError("enstrophy_budget: states carry different viscosities");
  }
  lp::require_same_grid(first.grid(), forcing.grid(), "enstrophy_budget forcing");

  EnstrophyBudget b;
  double prev_diss = 0.0, prev_inj = 0.0;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const FlowState& s = history[i];
    const double diss = s.nu * lp::gradient_l2_squared(s.omega);
    const double inj = forcing.is_steady() ? lp::inner(forcing.curl(), s.omega)
                                           : lp::inner(forcing.curl_at(s.t), s.omega);
    if (i > 0) {
      const double dt = s.t - history[i - 1].t;
      b.dissipation += 0.5 * dt * (diss + prev_diss);
      b.injection += 0.5 * dt * (inj + prev_inj);
    }
    prev_diss = diss;
    prev_inj = inj;
  }
  const double e0 = 0.5 * lp::l2_norm_squared(first.omega);
  const double e1 = 0.5 * lp::l2_norm_squared(history.back().omega);
  b.enstrophy_change = e1 - e0;
  b.scale = std::max(1.0, e0);
  b.span = history.back().t - first.t;
  b.residual = std::abs(b.enstrophy_change + b.dissipation - b.injection) / b.scale;
  return b;
}

double enstrophy_balance_residual(const std::vector<FlowState>& history, const Forcing& forcing) {
  return enstrophy_budget(history, forcing).residual;
}

}  // namespace detmodes::nse
