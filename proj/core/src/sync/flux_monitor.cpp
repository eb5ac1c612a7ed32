#include "detmodes/sync/flux_monitor.hpp"

#include <algorithm>
#include <cmath>

#include "detmodes/errors.hpp"
#include "detmodes/lp/littlewood_paley.hpp"
#include "detmodes/lp/norms.hpp"
#include "detmodes/nse/biot_savart.hpp"

namespace detmodes::sync {

namespace {

// (a . grad b, w) where a is the velocity of `transport`.
double advective_pairing(nse::AdvectionWorkspace& ws, const lp::SpectralField& transport,
                         const lp::SpectralField& advected, const lp::SpectralField& w,
                         lp::SpectralField& scratch) {
  ws.evaluate_pair(transport, advected, scratch);
  return -lp::inner(scratch, w);
}

// Difference of two real states, cleaned of the parents' round-off asymmetry.
lp::SpectralField real_difference(const lp::SpectralField& a, const lp::SpectralField& b) {
  lp::SpectralField d = a - b;
  lp::symmetrize(d);
  return d;
}

}  // namespace

double flux_term(const lp::SpectralField& omega_1, const lp::SpectralField& omega_2) {
  lp::require_same_grid(omega_1.grid(), omega_2.grid(), "flux_term");
  const lp::SpectralField diff = real_difference(omega_1, omega_2);
  nse::AdvectionWorkspace ws(diff.grid());
  lp::SpectralField scratch(diff.grid());
  return advective_pairing(ws, diff, omega_2, diff, scratch);
}

BonySplit bony_split(const lp::SpectralField& omega_1, const lp::SpectralField& omega_2) {
  lp::require_same_grid(omega_1.grid(), omega_2.grid(), "bony_split");
  const lp::Grid& g = omega_1.grid();
  const lp::SpectralField diff = real_difference(omega_1, omega_2);
  const lp::ShellDecomposition v = lp::decompose(diff);
  const lp::ShellDecomposition w = lp::decompose(omega_2);
  const int top = g.q_max();

  // Running low parts: low[p + 1] = sum_{q <= p} band q, with low[0] empty.
  auto lows = [&](const lp::ShellDecomposition& d) {
    std::vector<lp::SpectralField> out(static_cast<std::size_t>(top + 3), lp::SpectralField(g));
    for (int p = -1; p <= top; ++p) {
      out[static_cast<std::size_t>(p + 2)] = out[static_cast<std::size_t>(p + 1)] + d.band(p);
    }
    return out;
  };
  const auto v_low = lows(v);
  const auto w_low = lows(w);
  // x_{<=p-2} sits at index p; only used for p >= 1.
  auto below = [](const std::vector<lp::SpectralField>& low, int p) -> const lp::SpectralField& {
    return low[static_cast<std::size_t>(p)];
  };

  nse::AdvectionWorkspace ws(g);
  lp::SpectralField scratch(g);
  BonySplit out;
  for (int p = -1; p <= top; ++p) {
    if (p >= 1) {
      out.low_high += advective_pairing(ws, below(v_low, p), w.band(p), diff, scratch);
      out.high_low += advective_pairing(ws, v.band(p), below(w_low, p), diff, scratch);
    }
    lp::SpectralField near(g);
    for (int pp = std::max(p - 1, -1); pp <= std::min(p + 1, top); ++pp) near += w.band(pp);
    out.high_high += advective_pairing(ws, v.band(p), near, diff, scratch);
  }
  return out;
}

double low_mode_sum(std::span<const double> band_l2, double length, int cutoff, double delta) {
  double sum = 0.0;
  const int last = std::min(cutoff, static_cast<int>(band_l2.size()) - 2);
  for (int p = -1; p <= last; ++p) {
    const double lambda = std::ldexp(1.0, p) / length;
    const double b = band_l2[static_cast<std::size_t>(p + 1)];
    sum += std::pow(lambda, -2.0 - 2.0 * delta) * b * b;
  }
  return sum;
}

void require_compatible(const nse::FlowState& master, const nse::FlowState& slave) {
  lp::require_same_grid(master.grid(), slave.grid(), "flux monitor");
  if (master.nu != slave.nu) throw MismatchError("master and slave viscosities differ");
  if (std::abs(master.t - slave.t) > 1e-9 * std::max(1.0, std::abs(master.t))) {
    throw MismatchError("master and slave are at different times");
  }
}

FluxMonitorSample flux_monitor(const nse::FlowState& master, const nse::FlowState& slave,
                               const diag::WavenumberParams& params, bool with_bony) {
  require_compatible(master, slave);
  const diag::ShellProfile profile = diag::compute_shell_profile(master.omega, master.t);
  return flux_monitor(master, slave, params, diag::determining_wavenumber(profile, params, master.nu),
                      with_bony);
}

FluxMonitorSample flux_monitor(const nse::FlowState& master, const nse::FlowState& slave,
                               const diag::WavenumberParams& params, const diag::Wavenumber& lambda,
                               bool with_bony) {
  require_compatible(master, slave);
  const lp::SpectralField diff = slave.omega - master.omega;
  const double length = master.grid().length();

  FluxMonitorSample s;
  s.t = master.t;
  s.lambda = lambda;
  s.flux = flux_term(slave.omega, master.omega);
  s.dissipation = master.nu * lp::gradient_l2_squared(diff);
  const std::vector<double> bands = lp::besov_shell_norms(diff, 2.0);
  s.low_mode_term = master.nu * std::pow(lambda.value, 4.0 + 2.0 * params.delta) *
                    low_mode_sum(bands, length, lambda.shell, params.delta);
  s.rhs = params.c0 * (s.dissipation + s.low_mode_term);
  s.ratio = s.rhs > 0.0 ? std::abs(s.flux) / s.rhs : 0.0;
  if (with_bony) s.bony = bony_split(slave.omega, master.omega);
  return s;
}

FluxRecord flux_record(const nse::FlowState& master, const nse::FlowState& slave) {
  require_compatible(master, slave);
  const lp::SpectralField diff = slave.omega - master.omega;
  FluxRecord r;
  r.flux = flux_term(slave.omega, master.omega);
  r.dissipation = master.nu * lp::gradient_l2_squared(diff);
  r.nu = master.nu;
  r.band_l2 = lp::besov_shell_norms(diff, 2.0);
  r.master = diag::compute_shell_profile(master.omega, master.t);
  return r;
}

CCalCalibration calibrate_c_cal(std::span<const FluxRecord> records, diag::WavenumberParams params,
                                double base, int max_steps, double quantile) {
  if (records.empty()) throw InsufficientDataError("c_cal calibration needs at least one record");
  if (!(base > 0.0) || max_steps < 0 || !(quantile > 0.0 && quantile <= 1.0)) {
    throw std::invalid_argument("invalid c_cal calibration ladder");
  }
  auto hold_fraction = [&](double c_cal) {
    params.c_cal = c_cal;
    params.c0 = diag::WavenumberParams::default_c0(params.sigma, c_cal);
    int held = 0;
    for (const FluxRecord& r : records) {
      const diag::Wavenumber lam = diag::determining_wavenumber(r.master, params, r.nu);
      const double low = r.nu * std::pow(lam.value, 4.0 + 2.0 * params.delta) *
                         low_mode_sum(r.band_l2, r.master.length, lam.shell, params.delta);
      if (std::abs(r.flux) <= 0.5 * (r.dissipation + low)) ++held;
    }
    return static_cast<double>(held) / static_cast<double>(records.size());
  };

  CCalCalibration out;
  out.c_cal = base;
  out.hold_fraction = hold_fraction(base);
  for (int j = 1; j <= max_steps; ++j) {
    const double c = std::ldexp(base, j);
    const double frac = hold_fraction(c);
    if (frac < quantile) break;
    out.c_cal = c;
    out.hold_fraction = frac;
    out.ladder_steps = j;
  }
  out.capped = out.ladder_steps == max_steps;
  out.c0 = diag::WavenumberParams::default_c0(params.sigma, out.c_cal);
  return out;
}

}  // namespace detmodes::sync
