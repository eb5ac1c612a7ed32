#pragma once

#include "detmodes/sync/sync_run.hpp"

namespace detmodes::sync {

/// Checks d/dt ||omega||^2 + phi ||omega||^2 <= psi along a synchronization
/// run, and the three hypotheses of the generalized Gronwall lemma on windows
/// of length T past the run's transient.
struct GroenwallReport {
  double window = 0.0;
  int samples = 0;
  double hold_fraction = 0.0;       // samples satisfying the inequality with slack 1
  double slack = 0.0;               // smallest 2^j (j >= 0) reaching 99%; infinity if none
  double slack_hold_fraction = 0.0;
  double phi_window_min = 0.0;      // liminf of int phi over windows
  double phi_negative_window_max = 0.0;  // limsup of int phi^- over windows
  double psi_max = 0.0;
  double psi_tail = 0.0;            // mean psi over the last window
  bool phi_positive = false;        // phi_window_min > 0
  bool phi_negative_bounded = false;
  bool psi_vanishing = false;       // psi_tail <= 1e-6 psi_max, or psi identically 0
};

inline constexpr double kSlackQuantile = 0.99;

/// Throws InsufficientDataError when the post-transient series is shorter than one window.
GroenwallReport groenwall_monitor(const SyncRunResult& run, double window);

}  // namespace detmodes::sync
