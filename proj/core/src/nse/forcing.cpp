#include "detmodes/nse/forcing.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "detmodes/errors.hpp"
#include "detmodes/nse/flow_state.hpp"

namespace detmodes::nse {

Forcing::Forcing(Kind kind, lp::SpectralField steady, Callback cb, int lo, int hi)
    : kind_(kind), steady_(std::move(steady)), callback_(std::move(cb)), shell_lo_(lo), shell_hi_(hi) {}

Forcing Forcing::none(const lp::Grid& grid) {
  Forcing f(Kind::steady, lp::SpectralField(grid), {}, -1, -1);
  f.description = "none";
  return f;
}

Forcing Forcing::steady(lp::SpectralField curl_f, int shell_lo, int shell_hi) {
  lp::require_hermitian(curl_f);
  require_mean_zero(curl_f, "forcing curl");
  return Forcing(Kind::steady, std::move(curl_f), {}, shell_lo, shell_hi);
}

Forcing Forcing::time_dependent(const lp::Grid& grid, Callback curl_f, int shell_lo, int shell_hi) {
  if (!curl_f) throw std::invalid_argument("time-dependent forcing needs a callback");
  return Forcing(Kind::time_dependent, lp::SpectralField(grid), std::move(curl_f), shell_lo, shell_hi);
}

lp::SpectralField Forcing::curl_at(double t) const {
  if (kind_ == Kind::steady) return steady_;
  lp::SpectralField out = callback_(t);
  lp::require_same_grid(out.grid(), steady_.grid(), "forcing callback");
  return out;
}

const lp::SpectralField& Forcing::curl() const {
  if (kind_ != Kind::steady) throw std::logic_error("curl() requires steady forcing");
  return steady_;
}

double Forcing::force_l2_norm(double t) const {
  if (kind_ == Kind::steady) return force_norm_from_curl(steady_);
  return force_norm_from_curl(curl_at(t));
}

double force_norm_from_curl(const lp::SpectralField& curl_f) {
  // A mean-free solenoidal force is determined by its curl, with the same
  // norm relation as velocity and vorticity.
  return std::sqrt(kinetic_energy_norm_squared(curl_f));
}

Forcing kolmogorov(const lp::Grid& grid, double amplitude, int shell) {
  if (shell < 0 || shell > grid.q_max()) {
    throw ConfigError("forcing shell must lie in [0, " + std::to_string(grid.q_max()) + "]");
  }
  const int kf = 1 << shell;
  lp::SpectralField curl(grid);
  curl.set_mode(0, kf, {0.0, -0.5 * amplitude});
  Forcing f = Forcing::steady(std::move(curl), shell, shell);
  std::ostringstream d;
  d.precision(17);
  d << "kolmogorov amplitude=" << amplitude << " shell=" << shell;
  f.description = d.str();
  return f;
}

double kolmogorov_amplitude_for_grashof(const lp::Grid& grid, double nu, double grashof, int shell) {
  // ||f||_2 = A L / (sqrt(2) kappa_f) for curl f = A sin(kappa_f y).
  const double k0 = grid.kappa0();
  const double kappa_f = std::ldexp(k0, shell);
  return grashof * nu * nu * k0 * k0 * kappa_f * std::sqrt(2.0) / grid.length();
}

}  // namespace detmodes::nse
