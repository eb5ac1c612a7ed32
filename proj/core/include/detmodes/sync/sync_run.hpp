#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detmodes/diag/wavenumber.hpp"
#include "detmodes/nse/flow_state.hpp"
#include "detmodes/nse/forcing.hpp"
#include "detmodes/nse/initial.hpp"
#include "detmodes/nse/stepper.hpp"
#include "detmodes/sync/flux_monitor.hpp"

namespace detmodes::sync {

enum class Coupling { none, replace, nudge };

const char* to_string(Coupling c) noexcept;
/// "none" / "replace" / "nudge"; throws ConfigError otherwise.
Coupling coupling_from_string(const std::string& s);

/// A master/slave pair sharing grid, viscosity and forcing.
struct SyncConfig {
  int n = 128;
  double length = 6.283185307179586;
  double nu = 0.01;
  std::optional<nse::Forcing> forcing;  // empty: unforced

  int Q = 0;
  Coupling coupling = Coupling::replace;
  double mu = 0.0;  // nudging rate, required > 0 for Coupling::nudge

  std::uint64_t master_seed = 1;
  std::uint64_t slave_seed = 2;
  nse::NoiseSpec initial;
  /// 0: the slave is an independent draw from slave_seed. > 0: the slave is
  /// the master plus a slave_seed draw scaled to this fraction of ||omega_master||_2.
  double slave_perturbation = 0.0;
  /// Starting master state (e.g. a spun-up snapshot); overrides master_seed.
  std::optional<nse::FlowState> master_start;

  double duration = 10.0;
  double sample_interval = 0.1;
  nse::StepperConfig stepper;

  diag::WavenumberParams params;
  double lambda_window = 1.0;       // T for the average of Lambda
  double transient_fraction = 0.5;  // discarded before the limsup
  bool record_bony = false;

  /// Throws ConfigError naming the violated bound.
  void validate() const;
};

struct SyncSample {
  double t = 0.0;
  double diff_u = 0.0;      // ||u - v||_2
  double diff_omega = 0.0;  // ||omega_u - omega_v||_2
  double low_diff = 0.0;    // ||(u - v)_{<=Q}||_2 (LP low projection)
  double master_omega = 0.0;
  FluxMonitorSample flux;
  std::vector<double> diff_low_l2;  // ||omega_{<=q}||_2 of the difference, q = -1..q_max
  double phi = 0.0;                 // filled after the run, once Lambda-bar is known
  double psi = 0.0;
  double denstrophy_dt = 0.0;       // d/dt ||omega||_2^2 by finite differences
};

enum class Verdict { synchronized, not_synchronized, inconclusive };

const char* to_string(Verdict v) noexcept;

/// Least-squares fit of log ||omega_u - omega_v||_2 against t.
struct DecayFit {
  double rate = 0.0;
  double intercept = 0.0;
  double rate_stderr = 0.0;
  double p_value = 1.0;  // one-sided, normal approximation of the t statistic
  int points = 0;
  bool floor_reached = false;  // difference hit the round-off floor
  double floor_time = 0.0;
};

/// Difference below floor_relative * max ||omega_master|| counts as round-off.
inline constexpr double kRoundoffFloor = 1e-13;

/// Fits the last half of the run; if the floor is reached the fit stops there.
DecayFit fit_decay(std::span<const SyncSample> samples);

/// Floor reached -> synchronized. Otherwise |rate| * t_run < ln 10 is
/// inconclusive and the sign of the rate decides.
Verdict classify(const DecayFit& fit, double t_run);

struct SyncRunResult {
  SyncConfig config;
  std::vector<SyncSample> samples;
  double lambda_bar = 0.0;       // of the master
  bool lambda_unresolved = false;  // Lambda hit q_max at some sample
  int q_bar = 0;                 // shell of Lambda-bar
  DecayFit fit;
  Verdict verdict = Verdict::inconclusive;
  double max_flux_ratio = 0.0;   // measured C
  double wall_seconds = 0.0;
  std::optional<nse::FlowState> master_final;
  std::optional<nse::FlowState> slave_final;
};

/// Overwrites the slave's Fourier modes with |k| <= 2^{Q+1} by the master's.
void replace_low_modes(const lp::SpectralField& master, lp::SpectralField& slave, int cutoff);

/// Exact relaxation of (slave - master) by exp(-mu dt chi(2^{-Q-1}|k|)).
void nudge_low_modes(const lp::SpectralField& master, lp::SpectralField& slave, int cutoff,
                     double mu, double dt);

/// Seeded initial pair (or master_start and a slave derived from it).
std::pair<nse::FlowState, nse::FlowState> initial_pair(const SyncConfig& cfg);

/// Runs master and slave in lockstep on two threads and records the series.
SyncRunResult run_sync(const SyncConfig& cfg);

/// Absorption calibration of c_cal from an uncoupled pilot of the configured
/// pair: `records` flux records evenly spaced over `pilot_duration`.
CCalCalibration calibrate_from_pilot(const SyncConfig& cfg, double pilot_duration, int records = 50);

/// Fills phi, psi and d/dt ||omega||^2 given Lambda-bar.
void fill_groenwall_series(SyncRunResult& result);

}  // namespace detmodes::sync
