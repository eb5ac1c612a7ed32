#include "detmodes/diag/grashof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "detmodes/errors.hpp"

namespace detmodes::diag {

double grashof_from_norm(double force_l2, double nu, double length) {
  if (!(nu > 0.0) || !(length > 0.0)) throw std::invalid_argument("nu and L must be positive");
  const double k0 = 2.0 * std::numbers::pi / length;
  return force_l2 / (nu * nu * k0 * k0);
}

double grashof_steady(const nse::Forcing& f, double nu, double length) {
  if (!f.is_steady()) throw std::invalid_argument("grashof_steady requires steady forcing");
  if (f.grid().length() != length) throw MismatchError("forcing grid length differs from L");
  return grashof_from_norm(f.force_l2_norm(), nu, length);
}

double averaging_time_factor(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("averaging time must be positive");
  return std::sqrt(x / -std::expm1(-x));
}

double grashof_nonautonomous(std::span<const TimeSample> force_norms, double nu, double length,
                             double window) {
  if (force_norms.size() < 2) throw InsufficientDataError("force norm series is empty");
  if (force_norms.back().t - force_norms.front().t < window * (1.0 - 1e-12)) {
    throw InsufficientDataError("force norm series shorter than one averaging window");
  }
  std::vector<TimeSample> squared(force_norms.begin(), force_norms.end());
  for (auto& s : squared) s.value *= s.value;
  TimeAverager avg(window, AverageMode::mean, 0.0);
  for (const auto& s : squared) avg.add(s.t, s.value);
  const double bounded_norm = std::sqrt(avg.limsup());
  const double k0 = 2.0 * std::numbers::pi / length;
  return grashof_from_norm(bounded_norm, nu, length) * averaging_time_factor(nu * k0 * k0 * window);
}

std::vector<TimeSample> sample_force_norm(const nse::Forcing& f, double t0, double t1, int count) {
  if (count < 2 || !(t1 > t0)) throw std::invalid_argument("need at least two samples on t0 < t1");
  std::vector<TimeSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = t0 + (t1 - t0) * i / (count - 1);
    out.push_back({t, f.force_l2_norm(t)});
  }
  return out;
}

double grashof_limsup(std::span<const TimeSample> force_norms, double nu, double length,
                      double transient_fraction) {
  if (force_norms.empty()) throw InsufficientDataError("force norm series is empty");
  const double t0 = force_norms.front().t;
  const double cut = t0 + transient_fraction * (force_norms.back().t - t0);
  double best = 0.0;
  for (const auto& s : force_norms) {
    if (s.t >= cut) best = std::max(best, s.value);
  }
  return grashof_from_norm(best, nu, length);
}

}  // namespace detmodes::diag
