#pragma once

#include <functional>
#include <vector>

#include "detmodes/diag/shell_profile.hpp"
#include "detmodes/diag/time_average.hpp"
#include "detmodes/diag/wavenumber.hpp"
#include "detmodes/nse/flow_state.hpp"
#include "detmodes/nse/forcing.hpp"
#include "detmodes/nse/stepper.hpp"

namespace detmodes::diag {

/// Diagnostics of one snapshot; averaged quantities are running values.
struct DiagnosticsRecord {
  double t = 0.0;
  double enstrophy = 0.0;     // ||omega||_2^2
  double palinstrophy = 0.0;  // ||grad omega||_2^2
  std::vector<double> shell_l2;    // ||omega_q||_2, q = -1..q_max
  std::vector<double> shell_linf;  // ||omega_q||_inf
  double grashof = 0.0;
  double eta = 0.0;
  double kappa_eta = 0.0;
  double d = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda = 0.0;
  double lambda_bar = 0.0;
  bool lambda_unresolved = false;
};

struct MonitorConfig {
  double nu = 0.0;
  double length = 0.0;
  double grashof = 0.0;
  double bernstein_constant = 0.0;
  WavenumberParams params;
  double window = 1.0;              // T
  double transient_fraction = 0.5;
};

/// Stateful diagnostics over a sequence of snapshots. Confined to one thread.
class DiagnosticsMonitor {
 public:
  explicit DiagnosticsMonitor(MonitorConfig cfg);

  DiagnosticsRecord observe(const nse::FlowState& state);

  const MonitorConfig& config() const noexcept { return cfg_; }
  const std::vector<ShellProfile>& history() const noexcept { return history_; }
  const TimeAverager& lambda_average() const noexcept { return lambda_; }
  const TimeAverager& palinstrophy_average() const noexcept { return palinstrophy_; }
  /// Per-sample flag: Lambda reached q_max without meeting its conditions.
  const std::vector<char>& unresolved() const noexcept { return unresolved_; }

 private:
  MonitorConfig cfg_;
  std::vector<ShellProfile> history_;
  std::vector<char> unresolved_;
  TimeAverager lambda_;
  TimeAverager palinstrophy_;
};

/// Post-transient summary of a monitored run.
struct RunSummary {
  double lambda_bar = 0.0;  // limsup of window means of Lambda
  bool lambda_unresolved = false;
  double avg_palinstrophy = 0.0;  // limsup of window means of ||grad omega||_2^2
  double d = 0.0;                 // from the post-transient history
  double eta = 0.0;
  double kappa_eta = 0.0;
  double enstrophy_first = 0.0;   // mean ||omega||^2 over the two halves past the transient
  double enstrophy_second = 0.0;
  bool stationary = false;        // halves agree within kStationarityTolerance
};

inline constexpr double kStationarityTolerance = 0.2;

/// Throws InsufficientDataError when no complete window lies past the transient.
RunSummary summarize(const DiagnosticsMonitor& monitor);

using RecordSink = std::function<void(const DiagnosticsRecord&)>;

/// Steps `state` to t_end, handing a snapshot every `sample_interval` (and the
/// initial one) to a diagnostics thread that feeds `monitor` and passes each
/// record to `sink` in order.
void run_monitored(nse::FlowState& state, nse::Stepper& stepper, const nse::Forcing& forcing,
                   double t_end, double sample_interval, DiagnosticsMonitor& monitor,
                   const RecordSink& sink);

}  // namespace detmodes::diag
