#pragma once

#include <optional>
#include <span>
#include <vector>

#include "detmodes/diag/shell_profile.hpp"
#include "detmodes/diag/wavenumber.hpp"
#include "detmodes/nse/flow_state.hpp"

namespace detmodes::sync {

/// Paraproduct pieces of the flux: low-high, high-low and high-high interactions.
struct BonySplit {
  double low_high = 0.0;   // sum_p (v_{<=p-2} . grad w_p, omega)
  double high_low = 0.0;   // sum_p (v_p . grad w_{<=p-2}, omega)
  double high_high = 0.0;  // sum_p sum_{|p-p'|<=1} (v_p . grad w_{p'}, omega)

  double total() const noexcept { return low_high + high_low + high_high; }
};

/// One evaluation of the flux term and its bound for the pair (slave, master).
///
/// The difference is omega = omega_slave - omega_master with velocity v; the
/// master plays the role of the reference solution whose wavenumber sets Q.
struct FluxMonitorSample {
  double t = 0.0;
  double flux = 0.0;             // I = int (v . grad omega_master) omega dx
  double dissipation = 0.0;      // nu ||grad omega||_2^2
  double low_mode_term = 0.0;    // nu Lambda^{4+2 delta} sum_{p<=Q} lambda_p^{-2-2 delta} ||omega_p||_2^2
  double rhs = 0.0;              // c0 (dissipation + low_mode_term), i.e. the bound with C = 1
  double ratio = 0.0;            // |I| / rhs: the constant C this sample needs; 0 when rhs = 0 = I
  diag::Wavenumber lambda;       // master's wavenumber; Q = lambda.shell
  std::optional<BonySplit> bony;
};

/// I = int (v . grad omega_2) omega dx with v, omega the velocity and vorticity
/// of omega_1 - omega_2. Pseudo-spectral with the 2/3 rule, which is exact here
/// because omega carries no modes beyond the dealiasing radius.
double flux_term(const lp::SpectralField& omega_1, const lp::SpectralField& omega_2);

/// The three paraproduct pieces of flux_term; they sum to it up to round-off.
BonySplit bony_split(const lp::SpectralField& omega_1, const lp::SpectralField& omega_2);

/// sum_{p<=Q} lambda_p^{-2-2 delta} ||omega_p||_2^2 from shell norms indexed q + 1.
double low_mode_sum(std::span<const double> band_l2, double length, int cutoff, double delta);

/// Throws MismatchError unless the two states share grid, viscosity and time.
void require_compatible(const nse::FlowState& master, const nse::FlowState& slave);

/// Flux and its bound. Lambda is taken from the master's shell profile.
FluxMonitorSample flux_monitor(const nse::FlowState& master, const nse::FlowState& slave,
                               const diag::WavenumberParams& params, bool with_bony = false);

/// Same with a precomputed master wavenumber.
FluxMonitorSample flux_monitor(const nse::FlowState& master, const nse::FlowState& slave,
                               const diag::WavenumberParams& params, const diag::Wavenumber& lambda,
                               bool with_bony = false);

/// Flux and bound ingredients that do not depend on c0: the quantities a
/// calibration of c0 needs at each sample of a pilot run.
struct FluxRecord {
  double flux = 0.0;
  double dissipation = 0.0;  // nu ||grad omega||_2^2
  double nu = 0.0;
  std::vector<double> band_l2;  // ||omega_p||_2 of the difference, indexed q + 1
  diag::ShellProfile master;    // master shell profile
};

FluxRecord flux_record(const nse::FlowState& master, const nse::FlowState& slave);

/// Result of the absorption calibration of c0.
struct CCalCalibration {
  double c_cal = 0.0;
  double c0 = 0.0;
  double hold_fraction = 0.0;  // fraction of records satisfying the absorption bound at c_cal
  int ladder_steps = 0;        // c_cal = base * 2^ladder_steps
  bool capped = false;         // the ladder top still held; c_cal is a lower bound
};

/// Largest c_cal on the ladder base * 2^j, j = 0..max_steps, for which
/// |I| <= (nu/2) ||grad omega||_2^2 + (nu/2) Lambda^{4+2 delta} sum_{p<=Q} lambda_p^{-2-2 delta} ||omega_p||_2^2
/// holds at no fewer than `quantile` of the records, with Lambda computed
/// from c0 = c_cal (1 - 2^{-sigma})^2. This is the absorption the Gronwall
/// step needs (C c0 <= 1/2). Returns j = 0 (c_cal = base) when even the base fails.
CCalCalibration calibrate_c_cal(std::span<const FluxRecord> records, diag::WavenumberParams params,
                                double base = 0.01, int max_steps = 24, double quantile = 0.99);

}  // namespace detmodes::sync
