#include "detmodes/diag/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "detmodes/diag/channel.hpp"
#include "detmodes/diag/intermittency.hpp"
#include "detmodes/diag/kraichnan.hpp"
#include "detmodes/errors.hpp"

namespace detmodes::diag {

DiagnosticsMonitor::DiagnosticsMonitor(MonitorConfig cfg)
    : cfg_(cfg),
      lambda_(cfg.window, AverageMode::mean, cfg.transient_fraction),
      palinstrophy_(cfg.window, AverageMode::mean, cfg.transient_fraction) {
  cfg_.params.validate();
  if (!(cfg_.nu > 0.0) || !(cfg_.length > 0.0)) throw ConfigError("nu and L must be positive");
  if (!(cfg_.bernstein_constant > 0.0)) throw ConfigError("Bernstein constant must be positive");
}

DiagnosticsRecord DiagnosticsMonitor::observe(const nse::FlowState& state) {
  history_.push_back(compute_shell_profile(state.omega, state.t));
  const ShellProfile& p = history_.back();

  DiagnosticsRecord r;
  r.t = state.t;
  r.enstrophy = p.enstrophy;
  r.palinstrophy = p.palinstrophy;
  r.shell_l2 = p.vorticity_l2;
  r.shell_linf = p.vorticity_linf;
  r.grashof = cfg_.grashof;
  const Wavenumber w1 = determining_wavenumber_1(l2_critical_norms(p), cfg_.params, cfg_.nu);
  const Wavenumber w2 = determining_wavenumber_2(linf_critical_norms(p), cfg_.params, cfg_.nu);
  r.lambda1 = w1.value;
  r.lambda2 = w2.value;
  const Wavenumber& w = w1.value <= w2.value ? w1 : w2;
  r.lambda = w.value;
  r.lambda_unresolved = w.unresolved;

  unresolved_.push_back(w.unresolved ? 1 : 0);
  lambda_.add(state.t, r.lambda);
  palinstrophy_.add(state.t, r.palinstrophy);
  r.lambda_bar = lambda_.samples().size() > 1 ? lambda_.running() : r.lambda;
  const double avg_pal = palinstrophy_.samples().size() > 1 ? palinstrophy_.running() : r.palinstrophy;
  r.d = intermittency_dimension(history_, cfg_.bernstein_constant);
  const KraichnanNumber k = kraichnan_number(avg_pal, r.d, cfg_.nu, cfg_.length);
  r.eta = k.eta;
  r.kappa_eta = k.kappa_eta;
  return r;
}

RunSummary summarize(const DiagnosticsMonitor& monitor) {
  const auto& hist = monitor.history();
  if (hist.size() < 2) throw InsufficientDataError("run summary needs at least two samples");
  const MonitorConfig& cfg = monitor.config();
  RunSummary s;
  s.lambda_bar = monitor.lambda_average().limsup();
  s.avg_palinstrophy = monitor.palinstrophy_average().limsup();

  const double t0 = hist.front().t;
  const double cut = t0 + cfg.transient_fraction * (hist.back().t - t0);
  auto first = std::find_if(hist.begin(), hist.end(), [&](const ShellProfile& p) { return p.t >= cut; });
  const std::span<const ShellProfile> tail(first, hist.end());
  const auto& unresolved = monitor.unresolved();
  for (std::size_t i = static_cast<std::size_t>(first - hist.begin()); i < unresolved.size(); ++i) {
    s.lambda_unresolved = s.lambda_unresolved || unresolved[i] != 0;
  }
  s.d = intermittency_dimension(tail, cfg.bernstein_constant);
  const KraichnanNumber k = kraichnan_number(s.avg_palinstrophy, s.d, cfg.nu, cfg.length);
  s.eta = k.eta;
  s.kappa_eta = k.kappa_eta;

  std::vector<TimeSample> ens;
  for (const auto& p : tail) ens.push_back({p.t, p.enstrophy});
  if (ens.size() >= 3) {
    const double mid = 0.5 * (ens.front().t + ens.back().t);
    const double a = integrate_samples(ens, ens.front().t, mid) / (mid - ens.front().t);
    const double b = integrate_samples(ens, mid, ens.back().t) / (ens.back().t - mid);
    s.enstrophy_first = a;
    s.enstrophy_second = b;
    const double scale = std::max(std::abs(a), std::abs(b));
    s.stationary = scale == 0.0 || std::abs(a - b) <= kStationarityTolerance * scale;
  }
  return s;
}

void run_monitored(nse::FlowState& state, nse::Stepper& stepper, const nse::Forcing& forcing,
                   double t_end, double sample_interval, DiagnosticsMonitor& monitor,
                   const RecordSink& sink) {
  if (!(sample_interval > 0.0)) throw std::invalid_argument("sample interval must be positive");
  const double dt = stepper.config().dt;
  const long long steps = std::llround((t_end - state.t) / dt);
  const long long every = std::max(1LL, std::llround(sample_interval / dt));

  Channel<nse::FlowState> snapshots;
  std::exception_ptr consumer_error;
  std::jthread consumer([&] {
    try {
      while (auto snap = snapshots.pop()) {
        const DiagnosticsRecord r = monitor.observe(*snap);
        if (sink) sink(r);
      }
    } catch (...) {
      consumer_error = std::current_exception();
      // Drain so the producer never blocks on a dead consumer.
      while (snapshots.pop()) {
      }
    }
  });

  try {
    snapshots.push(state);
    for (long long step = 1; step <= steps; ++step) {
      stepper.advance(state, forcing);
      if (step % every == 0 || step == steps) snapshots.push(state);
    }
  } catch (...) {
    snapshots.close();
    consumer.join();
    throw;
  }
  snapshots.close();
  consumer.join();
  if (consumer_error) std::rethrow_exception(consumer_error);
}

}  // namespace detmodes::diag
