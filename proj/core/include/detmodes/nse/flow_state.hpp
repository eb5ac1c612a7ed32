#pragma once

#include "detmodes/lp/spectral_field.hpp"

namespace detmodes::nse {

/// Vorticity snapshot of a 2D flow with its viscosity and time.
struct FlowState {
  lp::SpectralField omega;
  double t = 0.0;
  double nu = 0.0;

  const lp::Grid& grid() const noexcept { return omega.grid(); }
};

/// Throws MeanError if coeff(0) is not zero (relative to the largest coefficient).
void require_mean_zero(const lp::SpectralField& f, const char* what);

/// ||u||_2^2 = sum |omega_k|^2 / (kappa0 |k|)^2 over the lattice, times L^2.
double kinetic_energy_norm_squared(const lp::SpectralField& omega);

}  // namespace detmodes::nse
