#include "detmodes/sync/groenwall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detmodes/diag/time_average.hpp"
#include "detmodes/errors.hpp"

namespace detmodes::sync {

namespace {

double hold_fraction(const std::vector<SyncSample>& s, double slack) {
  int held = 0;
  for (const auto& x : s) {
    const double lhs = x.denstrophy_dt + x.phi * x.diff_omega * x.diff_omega;
    const double tol = 1e-12 * (std::abs(x.denstrophy_dt) + std::abs(x.phi) * x.diff_omega * x.diff_omega);
    if (lhs <= slack * x.psi + tol) ++held;
  }
  return s.empty() ? 0.0 : static_cast<double>(held) / static_cast<double>(s.size());
}

}  // namespace

GroenwallReport groenwall_monitor(const SyncRunResult& run, double window) {
  if (!(window > 0.0)) throw std::invalid_argument("Gronwall window must be positive");
  const auto& s = run.samples;
  if (s.size() < 2) throw InsufficientDataError("Gronwall monitor needs at least two samples");
  const double t0 = s.front().t;
  const double t1 = s.back().t;
  const double cut = t0 + run.config.transient_fraction * (t1 - t0);
  if (t1 - cut < window * (1.0 - 1e-9)) {
    throw InsufficientDataError("post-transient series is shorter than one Gronwall window");
  }

  GroenwallReport r;
  r.window = window;
  r.samples = static_cast<int>(s.size());
  r.hold_fraction = hold_fraction(s, 1.0);
  r.slack = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= 64; ++j) {
    const double slack = std::ldexp(1.0, j);
    const double f = hold_fraction(s, slack);
    if (f >= kSlackQuantile) {
      r.slack = slack;
      r.slack_hold_fraction = f;
      break;
    }
  }

  std::vector<diag::TimeSample> phi, phi_neg, psi;
  for (const auto& x : s) {
    phi.push_back({x.t, x.phi});
    phi_neg.push_back({x.t, std::max(-x.phi, 0.0)});
    psi.push_back({x.t, x.psi});
    r.psi_max = std::max(r.psi_max, x.psi);
  }
  r.phi_window_min = std::numeric_limits<double>::infinity();
  for (const auto& x : s) {
    if (x.t - window < cut - 1e-9 * window) continue;
    r.phi_window_min = std::min(r.phi_window_min, diag::integrate_samples(phi, x.t - window, x.t));
    r.phi_negative_window_max =
        std::max(r.phi_negative_window_max, diag::integrate_samples(phi_neg, x.t - window, x.t));
  }
  r.psi_tail = diag::integrate_samples(psi, t1 - window, t1) / window;
  r.phi_positive = r.phi_window_min > 0.0;
  r.phi_negative_bounded = std::isfinite(r.phi_negative_window_max);
  r.psi_vanishing = r.psi_max == 0.0 || r.psi_tail <= 1e-6 * r.psi_max;
  return r;
}

}  // namespace detmodes::sync
