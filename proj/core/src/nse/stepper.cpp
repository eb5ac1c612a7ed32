#include "detmodes/nse/stepper.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>

#include "detmodes/errors.hpp"

namespace detmodes::nse {

namespace {

struct EtdCoefficients {
  double e, e2, q, f1, f2, f3;
};

// Contour-integral evaluation of the ETDRK4 phi-functions for z = L h, with
// the points on a unit circle around z so that small |z| is not cancelled.
EtdCoefficients etd_coefficients(double lin, double h) {
  constexpr int kPoints = 32;
  const double z0 = lin * h;
  std::complex<double> q{0.0}, f1{0.0}, f2{0.0}, f3{0.0};
  for (int j = 0; j < kPoints; ++j) {
    const double theta = 2.0 * std::numbers::pi * (j + 0.5) / kPoints;
    const std::complex<double> z = z0 + std::polar(1.0, theta);
    const std::complex<double> ez = std::exp(z);
    const std::complex<double> ez2 = std::exp(0.5 * z);
    const std::complex<double> z3 = z * z * z;
    q += (ez2 - 1.0) / z;
    f1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
    f2 += (2.0 + z + ez * (z - 2.0)) / z3;
    f3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
  }
  EtdCoefficients c;
  c.e = std::exp(z0);
  c.e2 = std::exp(0.5 * z0);
  c.q = h * q.real() / kPoints;
  c.f1 = h * f1.real() / kPoints;
  c.f2 = h * f2.real() / kPoints;
  c.f3 = h * f3.real() / kPoints;
  return c;
}

}  // namespace

const char* to_string(Scheme s) noexcept {
  return s == Scheme::etdrk4 ? "etdrk4" : "cnab2";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "etdrk4") return Scheme::etdrk4;
  if (s == "cnab2") return Scheme::cnab2;
  throw ConfigError("scheme must be etdrk4 or cnab2, got '" + s + "'");
}

Stepper::Stepper(const lp::Grid& grid, double nu, StepperConfig cfg)
    : grid_(grid),
      nu_(nu),
      cfg_(cfg),
      advection_(grid),
      na_(grid), nb_(grid), nc_(grid), nd_(grid), a_(grid), b_(grid), c_(grid),
      prev_n_(grid) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConfigError("dt must be positive");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ConfigError("nu must be non-negative");
  if (!(cfg.cfl > 0.0)) throw ConfigError("cfl limit must be positive");
  const std::size_t size = grid.spectral_size();
  const double k0 = grid.kappa0();
  const double h = cfg.dt;
  if (cfg.scheme == Scheme::etdrk4) {
    e_.resize(size); e2_.resize(size); qc_.resize(size);
    f1_.resize(size); f2_.resize(size); f3_.resize(size);
    std::map<long long, EtdCoefficients> by_radius;
    lp::for_each_mode(grid, [&](int row, int col, int kx, int ky) {
      const long long k2 = static_cast<long long>(kx) * kx + static_cast<long long>(ky) * ky;
      auto it = by_radius.find(k2);
      if (it == by_radius.end()) {
        it = by_radius.emplace(k2, etd_coefficients(-nu * k0 * k0 * static_cast<double>(k2), h)).first;
      }
      const std::size_t i = grid.index(row, col);
      e_[i] = it->second.e;
      e2_[i] = it->second.e2;
      qc_[i] = it->second.q;
      f1_[i] = it->second.f1;
      f2_[i] = it->second.f2;
      f3_[i] = it->second.f3;
    });
  } else {
    cn_plus_.resize(size);
    cn_minus_inv_.resize(size);
    lp::for_each_mode(grid, [&](int row, int col, int kx, int ky) {
      const double lin = -nu * k0 * k0 * (static_cast<double>(kx) * kx + static_cast<double>(ky) * ky);
      const std::size_t i = grid.index(row, col);
      cn_plus_[i] = 1.0 + 0.5 * h * lin;
      cn_minus_inv_[i] = 1.0 / (1.0 - 0.5 * h * lin);
    });
  }
}

void Stepper::reset_history() { have_prev_ = false; }

void Stepper::evaluate_rhs(const lp::SpectralField& omega, double t, const Forcing& forcing,
                           lp::SpectralField& out, double* umax) {
  const double u = advection_.evaluate(omega, out, cfg_.dealias);
  if (umax != nullptr) *umax = u;
  if (forcing.is_steady()) {
    out += forcing.curl();
  } else {
    out += forcing.curl_at(t);
  }
}

void Stepper::check_cfl(double umax) const {
  const double dx = grid_.spacing();
  if (umax > 0.0 && cfg_.dt * umax > cfg_.cfl * dx) {
    const double suggested = 0.9 * cfg_.cfl * dx / umax;
    std::ostringstream msg;
    msg << "CFL violated: dt=" << cfg_.dt << " max|u|=" << umax << " dx=" << dx
        << "; suggested dt <= " << suggested;
    throw CflError(msg.str(), suggested);
  }
}

void Stepper::advance(FlowState& state, const Forcing& forcing) {
  lp::require_same_grid(state.grid(), grid_, "Stepper::advance");
  lp::require_same_grid(forcing.grid(), grid_, "Stepper::advance forcing");
  if (state.nu != nu_) {
    std::ostringstream msg;
    msg << "state viscosity " << state.nu << " differs from stepper viscosity " << nu_;
    throw MismatchError(msg.str());
  }
  if (cfg_.scheme == Scheme::etdrk4) {
    step_etdrk4(state, forcing);
  } else {
    step_cnab2(state, forcing);
  }
  state.omega.at(0, 0) = 0.0;
}

void Stepper::step_etdrk4(FlowState& state, const Forcing& forcing) {
  const double h = cfg_.dt;
  const double t = state.t;
  auto w = state.omega.data();

  evaluate_rhs(state.omega, t, forcing, na_, &last_umax_);
  check_cfl(last_umax_);
  {
    auto a = a_.data();
    auto n = na_.data();
    for (std::size_t i = 0; i < w.size(); ++i) a[i] = e2_[i] * w[i] + qc_[i] * n[i];
  }
  evaluate_rhs(a_, t + 0.5 * h, forcing, nb_, nullptr);
  {
    auto b = b_.data();
    auto n = nb_.data();
    for (std::size_t i = 0; i < w.size(); ++i) b[i] = e2_[i] * w[i] + qc_[i] * n[i];
  }
  evaluate_rhs(b_, t + 0.5 * h, forcing, nc_, nullptr);
  {
    auto a = a_.data();
    auto c = c_.data();
    auto n1 = na_.data();
    auto n3 = nc_.data();
    for (std::size_t i = 0; i < w.size(); ++i) c[i] = e2_[i] * a[i] + qc_[i] * (2.0 * n3[i] - n1[i]);
  }
  evaluate_rhs(c_, t + h, forcing, nd_, nullptr);
  auto n1 = na_.data();
  auto n2 = nb_.data();
  auto n3 = nc_.data();
  auto n4 = nd_.data();
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = e_[i] * w[i] + f1_[i] * n1[i] + 2.0 * f2_[i] * (n2[i] + n3[i]) + f3_[i] * n4[i];
  }
  state.t = t + h;
}

void Stepper::step_cnab2(FlowState& state, const Forcing& forcing) {
  const double h = cfg_.dt;
  evaluate_rhs(state.omega, state.t, forcing, na_, &last_umax_);
  check_cfl(last_umax_);
  if (!have_prev_ || prev_t_ != state.t) prev_n_ = na_;
  auto w = state.omega.data();
  auto n = na_.data();
  auto p = prev_n_.data();
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = cn_minus_inv_[i] * (cn_plus_[i] * w[i] + h * (1.5 * n[i] - 0.5 * p[i]));
  }
  std::swap(prev_n_, na_);
  state.t += h;
  have_prev_ = true;
  prev_t_ = state.t;
}

void Stepper::advance_to(FlowState& state, const Forcing& forcing, double t_end) {
  const long long steps = std::llround((t_end - state.t) / cfg_.dt);
  for (long long i = 0; i < steps; ++i) advance(state, forcing);
}

FlowState step(const FlowState& state, const Forcing& forcing, const StepperConfig& cfg) {
  Stepper stepper(state.grid(), state.nu, cfg);
  FlowState next = state;
  stepper.advance(next, forcing);
  return next;
}

}  // namespace detmodes::nse
