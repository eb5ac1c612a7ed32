#pragma once

#include <vector>

#include "detmodes/nse/flow_state.hpp"
#include "detmodes/nse/forcing.hpp"

namespace detmodes::nse {

struct EnstrophyBudget {
  double enstrophy_change = 0.0;  // 1/2 ||omega(t)||^2 - 1/2 ||omega(t0)||^2
  double dissipation = 0.0;       // nu int ||grad omega||^2
  double injection = 0.0;         // int (curl f, omega)
  double scale = 1.0;             // max(1, 1/2 ||omega(t0)||^2)
  double span = 0.0;              // t - t0
  double residual = 0.0;          // |change + dissipation - injection| / scale
};

/// Enstrophy equality audit over a stored history, integrals by trapezoid.
/// Throws InsufficientDataError for fewer than two states and MismatchError
/// for mixed grids or viscosities.
EnstrophyBudget enstrophy_budget(const std::vector<FlowState>& history, const Forcing& forcing);

double enstrophy_balance_residual(const std::vector<FlowState>& history, const Forcing& forcing);

}  // namespace detmodes::nse
