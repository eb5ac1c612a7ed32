#pragma once

#include <string>
#include <vector>

#include "detmodes/lp/spectral_field.hpp"
#include "detmodes/nse/biot_savart.hpp"
#include "detmodes/nse/flow_state.hpp"
#include "detmodes/nse/forcing.hpp"

namespace detmodes::nse {

enum class Scheme { etdrk4, cnab2 };

const char* to_string(Scheme s) noexcept;
/// Parses "etdrk4" / "cnab2"; throws ConfigError otherwise.
Scheme scheme_from_string(const std::string& s);

struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::etdrk4;
  bool dealias = true;
  /// Courant limit: dt <= cfl * dx / max|u|.
  double cfl = 0.5;
};

/// Advances the vorticity equation omega_t + u.grad(omega) = nu Lap(omega) + curl f.
///
/// The viscous term is integrated exactly (ETDRK4) or by Crank-Nicolson
/// (CNAB2, with Adams-Bashforth for the nonlinear and forcing terms). Owns all
/// scratch; not thread-safe, use one stepper per thread.
class Stepper {
 public:
  Stepper(const lp::Grid& grid, double nu, StepperConfig cfg);

  const StepperConfig& config() const noexcept { return cfg_; }
  double nu() const noexcept { return nu_; }
  const lp::Grid& grid() const noexcept { return grid_; }

  /// One step of size cfg.dt. Throws CflError (state untouched) if the
  /// Courant condition fails at the start of the step.
  void advance(FlowState& state, const Forcing& forcing);

  /// Takes round((t_end - state.t) / dt) steps.
  void advance_to(FlowState& state, const Forcing& forcing, double t_end);

  /// Forgets the multistep history (CNAB2); called automatically when the
  /// state passed in is not the one produced by the previous step.
  void reset_history();

  /// max|u| seen at the start of the last step.
  double last_max_velocity() const noexcept { return last_umax_; }

 private:
  void evaluate_rhs(const lp::SpectralField& omega, double t, const Forcing& forcing,
                    lp::SpectralField& out, double* umax);
  void check_cfl(double umax) const;
  void step_etdrk4(FlowState& state, const Forcing& forcing);
  void step_cnab2(FlowState& state, const Forcing& forcing);

  lp::Grid grid_;
  double nu_;
  StepperConfig cfg_;
  AdvectionWorkspace advection_;

  // ETDRK4 coefficients per stored mode.
  std::vector<double> e_, e2_, qc_, f1_, f2_, f3_;
  // CNAB2 factors per stored mode.
  std::vector<double> cn_plus_, cn_minus_inv_;

  lp::SpectralField na_, nb_, nc_, nd_, a_, b_, c_;
  lp::SpectralField prev_n_;
  bool have_prev_ = false;
  double prev_t_ = 0.0;
  double last_umax_ = 0.0;
};

/// Convenience: a fresh stepper, one step.
FlowState step(const FlowState& state, const Forcing& forcing, const StepperConfig& cfg);

}  // namespace detmodes::nse
