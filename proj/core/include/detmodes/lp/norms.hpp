#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "detmodes/lp/spectral_field.hpp"

namespace detmodes::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// ||f||_2 with ||f||_2^2 = int_T |f|^2 dx, evaluated by Parseval:
/// L^2 * sum over the full lattice of |coeff(k)|^2.
double l2_norm(const SpectralField& f);
double l2_norm_squared(const SpectralField& f);

/// (f, g) = int_T f g dx for real fields.
double inner(const SpectralField& f, const SpectralField& g);

/// ||grad f||_2^2 = L^2 sum kappa0^2 |k|^2 |coeff(k)|^2.
double gradient_l2_squared(const SpectralField& f);

/// Max over the collocation grid of |f|.
double linf_norm(const SpectralField& f);
double linf_norm(const PhysicalField& f);

/// ||f||_p for 1 <= p <= infinity. p = 2 uses Parseval, p = infinity the grid
/// maximum, anything else the midpoint quadrature (L/n)^2 sum |f|^p.
double lp_norm(const SpectralField& f, double p);

/// Physical-space L^2 quadrature sqrt((L/n)^2 sum f^2).
double quadrature_l2_norm(const PhysicalField& f);

/// ||u_q||_p for q = -1..q_max (index 0 holds q = -1). Only p = 2 and
/// p = infinity are supported; other exponents throw std::invalid_argument.
std::vector<double> besov_shell_norms(const SpectralField& f, double p);

/// ||u_q||_r / (lambda_q^{2(1/s - 1/r)} ||u_q||_s) in two dimensions.
/// Requires 1 <= s <= r. Throws std::domain_error when the band is zero.
double bernstein_ratio(const SpectralField& f, int q, double r, double s);

/// Empirical Bernstein constant for r = infinity, s = 2 on one grid.
struct BernsteinCalibration {
  int n = 0;
  double length = 0.0;
  int samples_per_shell = 0;
  std::uint64_t seed = 0;
  int q_lo = 0;
  int q_hi = 0;
  std::vector<double> shell_max;  // max ratio seen at each q in [q_lo, q_hi]
  double extremizer_ratio = 0.0;  // ratio of the equal-phase band at q_hi
  double c_b = 0.0;               // max over shells and the extremizer
};

/// Band q of a sum of `sources` randomly placed, randomly weighted point
/// sources. Equal-sign sources align every band mode at the source location,
/// so this ensemble explores the upper end of the Bernstein ratio.
SpectralField random_localized_band(const Grid& grid, int q, int sources, std::uint64_t seed);

/// Band q with coefficients phi_q(k) and a common phase: the field that
/// attains the Bernstein bound at the origin.
SpectralField bernstein_extremizer(const Grid& grid, int q);

/// Sweeps the r = infinity, s = 2 ratio over `samples` random localized bands
/// per shell q in [max(q_lo, 0), min(q_hi, q_max)] and returns the maximum.
BernsteinCalibration calibrate_bernstein(const Grid& grid, int samples, std::uint64_t seed,
                                         int q_lo = 2, int q_hi = 6);

}  // namespace detmodes::lp
