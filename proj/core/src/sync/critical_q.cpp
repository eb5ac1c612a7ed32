#include "detmodes/sync/critical_q.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace detmodes::sync {

CriticalQTable summarize_critical_q(std::vector<CriticalQRow> rows, double length) {
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.Q < b.Q; });
  CriticalQTable t;
  t.rows = std::move(rows);
  if (t.rows.empty()) return t;
  t.lambda_bar = t.rows.front().lambda_bar;
  t.q_theorem = std::max(-1, static_cast<int>(std::ceil(std::log2(t.lambda_bar * length) - 1e-12)));

  const Verdict* prev = nullptr;
  bool seen_sync = false;
  t.monotone = true;
  for (const auto& r : t.rows) {
    if (r.verdict == Verdict::inconclusive) {
      ++t.inconclusive;
      continue;
    }
    if (prev != nullptr && *prev != r.verdict) ++t.transitions;
    if (r.verdict == Verdict::synchronized) seen_sync = true;
    if (r.verdict == Verdict::not_synchronized && seen_sync) t.monotone = false;
    prev = &r.verdict;
  }
  // Q* is the start of the trailing run of synchronized rows.
  t.q_star = t.rows.back().Q + 1;
  for (auto it = t.rows.rbegin(); it != t.rows.rend() && it->verdict == Verdict::synchronized; ++it) {
    t.q_star = it->Q;
    t.found = true;
  }
  return t;
}

CriticalQTable find_critical_q(const SyncConfig& base, std::span<const int> q_values) {
  if (q_values.size() < 2) throw std::invalid_argument("critical-Q sweep needs at least two cutoffs");
  std::vector<int> qs(q_values.begin(), q_values.end());
  std::sort(qs.begin(), qs.end());
  std::vector<CriticalQRow> rows;
  for (int q : qs) {
    SyncConfig cfg = base;
    cfg.Q = q;
    const SyncRunResult run = run_sync(cfg);
    CriticalQRow row;
    row.Q = q;
    row.lambda_q = std::ldexp(1.0, q) / cfg.length;
    row.verdict = run.verdict;
    row.fit = run.fit;
    row.lambda_bar = run.lambda_bar;
    row.lambda_unresolved = run.lambda_unresolved;
    row.initial_diff = run.samples.front().diff_omega;
    row.final_diff = run.samples.back().diff_omega;
    row.max_flux_ratio = run.max_flux_ratio;
    rows.push_back(row);
  }
  return summarize_critical_q(std::move(rows), base.length);
}

}  // namespace detmodes::sync
