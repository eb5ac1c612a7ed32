#include "detmodes/diag/wavenumber.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detmodes/errors.hpp"

namespace detmodes::diag {

double WavenumberParams::default_c0(double sigma, double c_cal) {
  const double gap = 1.0 - std::exp2(-sigma);
  return c_cal * gap * gap;
}

void WavenumberParams::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (!(sigma > 0.0 && sigma < 2.0)) fail("sigma must lie in (0,2)");
  if (!(delta > 0.0 && delta < 1.0)) fail("delta must lie in (0,1)");
  if (!(c_cal > 0.0) || !std::isfinite(c_cal)) fail("c_cal must be positive");
  if (!(c0 > 0.0)) fail("c0 must be positive");
  const double bound = default_c0(sigma, c_cal);
  if (c0 > bound * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "c0 must not exceed c_cal*(1-2^-sigma)^2 = " << bound;
    fail(msg.str());
  }
}

namespace {

// Shared scan: a shell q passes when the high-band tail and the low-pass
// gradient are both below c0 nu after the given lambda_q scalings.
Wavenumber scan(const CriticalNorms& norms, const WavenumberParams& params, double nu,
                int band_power, int grad_power) {
  const int q_max = norms.q_max;
  const double threshold = params.c0 * nu;
  // tail[q] = max_{q < p <= q_max} 2^{p sigma} ||omega_p||
  std::vector<double> tail(static_cast<std::size_t>(q_max + 2), 0.0);
  for (int q = q_max - 1; q >= 0; --q) {
    const int p = q + 1;
    const double weighted = std::exp2(p * params.sigma) * norms.band[static_cast<std::size_t>(p + 1)];
    tail[static_cast<std::size_t>(q + 1)] = std::max(tail[static_cast<std::size_t>(p + 1)], weighted);
  }
  for (int q = 0; q <= q_max; ++q) {
    const double lambda = std::ldexp(1.0, q) / norms.length;
    const double high = std::exp2(-q * params.sigma) * tail[static_cast<std::size_t>(q + 1)] /
                        std::pow(lambda, band_power);
    const double low = norms.grad_low[static_cast<std::size_t>(q + 1)] / std::pow(lambda, grad_power);
    if (high < threshold && low < threshold) return {lambda, q, false};
  }
  return {std::ldexp(1.0, q_max) / norms.length, q_max, true};
}

void check(const CriticalNorms& n) {
  const std::size_t want = static_cast<std::size_t>(n.q_max + 2);
  if (n.q_max < 0 || n.band.size() != want || n.grad_low.size() != want || !(n.length > 0.0)) {
    throw std::invalid_argument("critical norms must cover shells -1..q_max on a positive length");
  }
}

}  // namespace

Wavenumber determining_wavenumber_1(const CriticalNorms& l2, const WavenumberParams& params, double nu) {
  check(l2);
  return scan(l2, params, nu, 1, 2);
}

Wavenumber determining_wavenumber_2(const CriticalNorms& linf, const WavenumberParams& params, double nu) {
  check(linf);
  return scan(linf, params, nu, 2, 3);
}

Wavenumber determining_wavenumber(const CriticalNorms& l2, const CriticalNorms& linf,
                                  const WavenumberParams& params, double nu) {
  const Wavenumber a = determining_wavenumber_1(l2, params, nu);
  const Wavenumber b = determining_wavenumber_2(linf, params, nu);
  return a.value <= b.value ? a : b;
}

CriticalNorms l2_critical_norms(const ShellProfile& profile) {
  return {profile.length, profile.q_max, profile.vorticity_l2, profile.grad_low_l2};
}

CriticalNorms linf_critical_norms(const ShellProfile& profile) {
  return {profile.length, profile.q_max, profile.vorticity_linf, profile.grad_low_linf};
}

Wavenumber determining_wavenumber(const ShellProfile& profile, const WavenumberParams& params, double nu) {
  return determining_wavenumber(l2_critical_norms(profile), linf_critical_norms(profile), params, nu);
}

double lambda_bar(std::span<const TimeSample> lambda_series, double window, double transient_fraction) {
  TimeAverager avg(window, AverageMode::mean, transient_fraction);
  for (const auto& s : lambda_series) avg.add(s.t, s.value);
  return avg.limsup();
}

int shell_at_or_above(double wavenumber, double length) {
  if (!(wavenumber > 0.0)) return -1;
  int q = static_cast<int>(std::ceil(std::log2(wavenumber * length) - 1e-12));
  return std::max(q, -1);
}

}  // namespace detmodes::diag
