#pragma once

#include <vector>

#include "detmodes/lp/spectral_field.hpp"

namespace detmodes::nse {

struct Velocity {
  lp::SpectralField u;
  lp::SpectralField v;
};

/// u = grad^perp psi with -Lap psi = omega: u_k = i kappa0 ky omega_k / (kappa0 |k|)^2,
/// v_k = -i kappa0 kx omega_k / (kappa0 |k|)^2. Throws MeanError if omega has a mean.
Velocity velocity_from_vorticity(const lp::SpectralField& omega);

/// Circular 2/3-rule mask over the stored half plane (1 kept, 0 removed).
/// Nyquist lines are always removed.
const std::vector<unsigned char>& dealias_mask(const lp::Grid& grid);

/// Applies the dealiasing mask in place.
void dealias(lp::SpectralField& f);

/// Spectral coefficients of -u.grad(omega), dealiased and mean-free.
lp::SpectralField nonlinear_term(const lp::SpectralField& omega);

/// Reusable workspace for the pseudo-spectral product; one per thread.
class AdvectionWorkspace {
 public:
  explicit AdvectionWorkspace(const lp::Grid& grid);

  /// out = -u.grad(omega) (dealiased, mean-free). Returns max |u| over the grid.
  double evaluate(const lp::SpectralField& omega, lp::SpectralField& out, bool dealias_output = true);

  /// out = P(-a.grad(b)) where a is the velocity of `transport` and P the dealiasing mask.
  void evaluate_pair(const lp::SpectralField& transport, const lp::SpectralField& advected,
                     lp::SpectralField& out);

 private:
  double product(const lp::SpectralField& transport, const lp::SpectralField& advected,
                 lp::SpectralField& out, bool dealias_output);

  lp::Grid grid_;
  lp::ComplexBuffer spec_a_, spec_b_, spec_c_, spec_d_, spec_scratch_;
  lp::RealBuffer u_, v_, wx_, wy_, prod_, real_scratch_;
};

}  // namespace detmodes::nse
