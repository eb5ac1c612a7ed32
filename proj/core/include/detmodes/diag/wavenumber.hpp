#pragma once

#include <span>
#include <vector>

#include "detmodes/diag/shell_profile.hpp"
#include "detmodes/diag/time_average.hpp"

namespace detmodes::diag {

/// Threshold parameters of the determining wavenumber.
struct WavenumberParams {
  double sigma = 0.5;
  double delta = 0.5;
  double c_cal = 0.01;
  double c0 = default_c0(0.5, 0.01);

  static double default_c0(double sigma, double c_cal);
  /// Throws ConfigError naming the violated bound.
  void validate() const;
};

/// Critical norms of one snapshot, indexed by q + 1 for q = -1..q_max.
struct CriticalNorms {
  double length = 0.0;
  int q_max = 0;
  std::vector<double> band;      // ||omega_p||
  std::vector<double> grad_low;  // ||grad omega_{<=q}||
};

struct Wavenumber {
  double value = 0.0;  // lambda_q = 2^q / L
  int shell = 0;
  bool unresolved = false;  // no shell up to q_max met the conditions
};

/// L^2-based wavenumber: smallest q >= 0 with
/// 2^{(p-q) sigma} lambda_q^{-1} ||omega_p||_2 < c0 nu for all q < p <= q_max and
/// lambda_q^{-2} ||grad omega_{<=q}||_2 < c0 nu.
Wavenumber determining_wavenumber_1(const CriticalNorms& l2, const WavenumberParams& params, double nu);

/// L^inf-based wavenumber with lambda_q^{-2} ||omega_p||_inf and lambda_q^{-3} ||grad omega_{<=q}||_inf.
Wavenumber determining_wavenumber_2(const CriticalNorms& linf, const WavenumberParams& params, double nu);

/// min of the two.
Wavenumber determining_wavenumber(const CriticalNorms& l2, const CriticalNorms& linf,
                                  const WavenumberParams& params, double nu);

CriticalNorms l2_critical_norms(const ShellProfile& profile);
CriticalNorms linf_critical_norms(const ShellProfile& profile);

/// Lambda of one snapshot from its shell profile.
Wavenumber determining_wavenumber(const ShellProfile& profile, const WavenumberParams& params, double nu);

/// Max over complete trailing windows (past the transient) of the window mean
/// of Lambda(t). Throws InsufficientDataError if no window fits.
double lambda_bar(std::span<const TimeSample> lambda_series, double window,
                  double transient_fraction = 0.5);

/// Smallest shell Q with lambda_Q >= wavenumber (the cutoff a synchronization run needs).
int shell_at_or_above(double wavenumber, double length);

}  // namespace detmodes::diag
