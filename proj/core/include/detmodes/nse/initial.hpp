#pragma once

#include <cstdint>

#include "detmodes/lp/spectral_field.hpp"

namespace detmodes::nse {

/// omega = 2 A sin(kappa0 x) sin(kappa0 y), whose velocity is
/// A (sin x cos y, -cos x sin y) for L = 2 pi.
lp::SpectralField taylor_green(const lp::Grid& grid, double amplitude = 1.0);

struct NoiseSpec {
  double k_lo = 1.0;          // lattice radius band [k_lo, k_hi]
  double k_hi = 8.0;
  double slope = -1.0;        // |omega_k| ~ |k|^slope
  double l2_norm = 1.0;       // target ||omega||_2
};

/// Random-phase vorticity with a power-law amplitude spectrum, reproducible
/// from the seed (raw mt19937_64 output, no library distributions).
lp::SpectralField random_vorticity(const lp::Grid& grid, std::uint64_t seed, const NoiseSpec& spec);

}  // namespace detmodes::nse
