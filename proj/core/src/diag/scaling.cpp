#include "detmodes/diag/scaling.hpp"

#include <cmath>

#include "detmodes/diag/grashof.hpp"
#include "detmodes/diag/kraichnan.hpp"
#include "detmodes/errors.hpp"
#include "detmodes/nse/forcing.hpp"
#include "detmodes/nse/initial.hpp"

namespace detmodes::diag {

ScalingFit fit_scaling(std::span<const ScalingRow> rows) {
  std::vector<std::pair<double, double>> pts;
  ScalingFit fit;
  for (const auto& r : rows) {
    if (!(r.grashof > 0.0) || !(r.lambda_bar > 0.0)) continue;
    pts.emplace_back(std::log(r.grashof), std::log(r.lambda_bar));
    fit.mean_d += r.d;
  }
  if (pts.size() < 2) throw InsufficientDataError("scaling fit needs two runs with G > 0");
  const double m = static_cast<double>(pts.size());
  fit.points = static_cast<int>(pts.size());
  fit.mean_d /= m;
  fit.predicted = 2.0 / (fit.mean_d + 4.0);
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x / m;
    my += y / m;
  }
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("scaling fit needs two distinct Grashof numbers");
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  if (pts.size() > 2) {
    double ssr = 0.0;
    for (const auto& [x, y] : pts) {
      const double r = y - fit.intercept - fit.exponent * x;
      ssr += r * r;
    }
    fit.exponent_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
  }
  return fit;
}

ScalingRow scaling_run(const ScalingStudyConfig& cfg, double amplitude, const RecordSink& sink) {
  const lp::Grid grid(cfg.n, cfg.length);
  const nse::Forcing forcing = amplitude > 0.0 ? nse::kolmogorov(grid, amplitude, cfg.forcing_shell)
                                               : nse::Forcing::none(grid);
  ScalingRow row;
  row.amplitude = amplitude;
  row.grashof = grashof_from_norm(forcing.force_l2_norm(), cfg.nu, cfg.length);

  nse::NoiseSpec noise;
  noise.l2_norm = cfg.initial_fraction * cfg.nu * grid.kappa0() * row.grashof;
  nse::FlowState state{row.grashof > 0.0 ? nse::random_vorticity(grid, cfg.seed, noise) : lp::SpectralField(grid),
                       0.0, cfg.nu};
  nse::Stepper stepper(grid, cfg.nu, cfg.stepper);
  if (cfg.spinup > 0.0) stepper.advance_to(state, forcing, cfg.spinup);

  MonitorConfig mc;
  mc.nu = cfg.nu;
  mc.length = cfg.length;
  mc.grashof = row.grashof;
  mc.bernstein_constant = cfg.bernstein_constant;
  mc.params = cfg.params;
  mc.window = cfg.window;
  mc.transient_fraction = cfg.transient_fraction;
  DiagnosticsMonitor monitor(mc);
  run_monitored(state, stepper, forcing, state.t + cfg.duration, cfg.sample_interval, monitor, sink);

  const RunSummary s = summarize(monitor);
  row.d = s.d;
  row.eta = s.eta;
  row.kappa_eta = s.kappa_eta;
  row.kraichnan_bound = kraichnan_bound(row.grashof, s.d, cfg.length);
  row.lambda_bar = s.lambda_bar;
  row.avg_palinstrophy = s.avg_palinstrophy;
  row.lambda_unresolved = s.lambda_unresolved;
  row.stationary = s.stationary;
  return row;
}

ScalingTable scaling_study(const ScalingStudyConfig& cfg, const ScalingSink& sink) {
  ScalingTable table;
  for (std::size_t i = 0; i < cfg.amplitudes.size(); ++i) {
    RecordSink per_run;
    if (sink) per_run = [&sink, i](const DiagnosticsRecord& r) { sink(i, r); };
    table.rows.push_back(scaling_run(cfg, cfg.amplitudes[i], per_run));
  }
  table.fit = fit_scaling(table.rows);
  return table;
}

}  // namespace detmodes::diag
