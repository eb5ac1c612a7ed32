#pragma once

#include <vector>

#include "detmodes/lp/spectral_field.hpp"

namespace detmodes::diag {

/// Per-shell norms of one vorticity snapshot, indexed by q + 1 for q = -1..q_max.
struct ShellProfile {
  double t = 0.0;
  double length = 0.0;
  int q_max = 0;

  std::vector<double> velocity_l2;     // ||u_q||_2
  std::vector<double> velocity_linf;   // ||u_q||_inf (vector magnitude)
  std::vector<double> vorticity_l2;    // ||omega_q||_2
  std::vector<double> vorticity_linf;  // ||omega_q||_inf
  std::vector<double> grad_low_l2;     // ||grad omega_{<=q}||_2
  std::vector<double> grad_low_linf;   // ||grad omega_{<=q}||_inf

  double enstrophy = 0.0;     // ||omega||_2^2
  double palinstrophy = 0.0;  // ||grad omega||_2^2 = ||Lap u||_2^2

  static std::size_t slot(int q) noexcept { return static_cast<std::size_t>(q + 1); }
};

ShellProfile compute_shell_profile(const lp::SpectralField& omega, double t = 0.0);

/// Max over the grid of |grad f| from spectral coefficients.
double gradient_linf(const lp::SpectralField& f);

}  // namespace detmodes::diag
