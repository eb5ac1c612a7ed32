#pragma once

#include <span>
#include <vector>

#include "detmodes/sync/sync_run.hpp"

namespace detmodes::sync {

struct CriticalQRow {
  int Q = 0;
  double lambda_q = 0.0;  // 2^Q / L
  Verdict verdict = Verdict::inconclusive;
  DecayFit fit;
  double lambda_bar = 0.0;
  bool lambda_unresolved = false;
  double initial_diff = 0.0;
  double final_diff = 0.0;
  double max_flux_ratio = 0.0;
};

struct CriticalQTable {
  std::vector<CriticalQRow> rows;
  /// Smallest Q whose verdict and every larger Q's verdict is synchronized;
  /// q_max + 1 of the sweep when the last row is not synchronized.
  int q_star = 0;
  bool found = false;
  int transitions = 0;      // changes between decided verdicts along increasing Q
  int inconclusive = 0;
  bool monotone = false;    // decided verdicts read not...not, sync...sync
  double lambda_bar = 0.0;  // master's, from the first row
  int q_theorem = 0;        // shell of lambda_bar
};

/// One synchronization run per Q (sorted ascending) from a shared template.
/// Throws std::invalid_argument for fewer than two values.
CriticalQTable find_critical_q(const SyncConfig& base, std::span<const int> q_values);

/// Summarizes already computed rows (sorted by Q).
CriticalQTable summarize_critical_q(std::vector<CriticalQRow> rows, double length);

}  // namespace detmodes::sync
