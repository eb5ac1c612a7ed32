#pragma once

#include <span>

#include "detmodes/diag/shell_profile.hpp"

namespace detmodes::diag {

/// Time-averaged ingredients of the Bernstein saturation ratio.
struct SaturationSums {
  std::vector<double> linf_weight;  // <||u_q||_inf^2>, q = -1..q_max
  std::vector<double> l2_weight;    // <||u_q||_2^2>
  double length = 0.0;
};

SaturationSums saturation_sums(std::span<const ShellProfile> history);

/// B(s) = <sum lambda_q^{2+s} ||u_q||_inf^2> / (C_B^{2-s} L^{-s} <sum lambda_q^4 ||u_q||_2^2>).
double saturation_ratio(const SaturationSums& sums, double bernstein_constant, double s);

inline constexpr double kDimensionStep = 0.01;

/// Largest s on {0, 0.01, ..., 2} with 0 < numerator(s) <= denominator(s).
/// Returns 2 when the velocity vanishes over the whole history and 0 when
/// no grid point qualifies. Throws InsufficientDataError on an empty history.
double intermittency_dimension(std::span<const ShellProfile> history, double bernstein_constant);

}  // namespace detmodes::diag
