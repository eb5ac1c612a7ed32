#include "detmodes/io/execute.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>

#include "detmodes/diag/grashof.hpp"
#include "detmodes/diag/kraichnan.hpp"
#include "detmodes/diag/monitor.hpp"
#include "detmodes/diag/scaling.hpp"
#include "detmodes/diag/shell_profile.hpp"
#include "detmodes/errors.hpp"
#include "detmodes/io/checkpoint.hpp"
#include "detmodes/io/csv.hpp"
#include "detmodes/lp/norms.hpp"
#include "detmodes/nse/initial.hpp"
#include "detmodes/nse/stepper.hpp"
#include "detmodes/sync/critical_q.hpp"
#include "detmodes/sync/sync_run.hpp"
#include "detmodes/version.hpp"

namespace detmodes::io {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

// Doubles go through format_double so summaries are as reproducible as the CSVs.
json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double forcing_amplitude(const RunSpec& s, const lp::Grid& grid) {
  if (s.forcing.kind == "none") return 0.0;
  if (s.forcing.grashof > 0.0) {
    return nse::kolmogorov_amplitude_for_grashof(grid, s.nu, s.forcing.grashof, s.forcing.shell);
  }
  return s.forcing.amplitude;
}

nse::StepperConfig stepper_config(const RunSpec& s) {
  nse::StepperConfig c;
  c.dt = s.dt;
  c.scheme = nse::scheme_from_string(s.scheme);
  c.dealias = s.dealias;
  c.cfl = s.cfl;
  return c;
}

diag::WavenumberParams wavenumber_params(const RunSpec& s) {
  diag::WavenumberParams p;
  p.sigma = s.diag.sigma;
  p.delta = s.diag.delta;
  p.c_cal = s.diag.c_cal;
  p.c0 = s.diag.c0 > 0.0 ? s.diag.c0 : diag::WavenumberParams::default_c0(s.diag.sigma, s.diag.c_cal);
  return p;
}

double bernstein_constant(const RunSpec& s, const lp::Grid& grid) {
  if (s.diag.bernstein > 0.0) return s.diag.bernstein;
  return lp::calibrate_bernstein(grid, s.calibrate.samples, s.seed, s.calibrate.q_lo, s.calibrate.q_hi).c_b;
}

CheckpointMeta checkpoint_meta(const RunSpec& s, const lp::Grid& grid, const nse::FlowState& state) {
  CheckpointMeta m;
  m.t = state.t;
  m.nu = state.nu;
  m.dt = s.dt;
  m.forcing_kind = s.forcing.kind;
  m.forcing_amplitude = forcing_amplitude(s, grid);
  m.forcing_shell = s.forcing.shell;
  m.seed = s.seed;
  return m;
}

std::uint64_t slave_seed(const RunSpec& s) { return s.sync.slave_seed ? s.sync.slave_seed : s.seed + 1; }

nse::NoiseSpec noise_spec(const RunSpec& s) {
  nse::NoiseSpec n;
  n.k_lo = s.initial.k_lo;
  n.k_hi = s.initial.k_hi;
  n.slope = s.initial.slope;
  n.l2_norm = s.initial.l2_norm;
  return n;
}

int sample_count(const RunSpec& s) {
  return static_cast<int>(std::llround((s.t_end - s.spinup) / s.output.cadence));
}

sync::SyncConfig sync_config(const RunSpec& s, const nse::Forcing& forcing, const nse::FlowState& master) {
  sync::SyncConfig c;
  c.n = s.n;
  c.length = s.length;
  c.nu = s.nu;
  c.forcing = forcing;
  c.Q = s.sync.Q;
  c.coupling = sync::coupling_from_string(s.sync.coupling);
  c.mu = s.sync.mu;
  c.master_seed = s.seed;
  c.slave_seed = slave_seed(s);
  c.initial = noise_spec(s);
  c.slave_perturbation = s.sync.perturbation;
  c.master_start = master;
  c.duration = s.t_end - s.spinup;
  c.sample_interval = s.output.cadence;
  c.stepper = stepper_config(s);
  c.params = wavenumber_params(s);
  c.lambda_window = s.diag.window;
  c.transient_fraction = s.diag.transient;
  c.record_bony = s.sync.record_bony;
  return c;
}

nse::FlowState spun_up(const RunSpec& s, const lp::Grid& grid, const nse::Forcing& forcing) {
  nse::FlowState state = initial_state(s, grid);
  if (s.spinup > 0.0) {
    nse::Stepper stepper(grid, s.nu, stepper_config(s));
    stepper.advance_to(state, forcing, s.spinup);
  }
  return state;
}

// Fills c_cal and c0 from an uncoupled pilot when diag.calibrate is set and
// records the outcome in calibration.json.
diag::WavenumberParams calibrated_params(const RunSpec& s, sync::SyncConfig pilot, const fs::path& dir) {
  diag::WavenumberParams p = wavenumber_params(s);
  if (!s.diag.calibrate) return p;
  pilot.coupling = sync::Coupling::none;
  const double span = s.diag.pilot > 0.0 ? s.diag.pilot : 0.5 * (s.t_end - s.spinup);
  const sync::CCalCalibration cal = sync::calibrate_from_pilot(pilot, span, s.diag.pilot_records);
  p.c_cal = cal.c_cal;
  p.c0 = cal.c0;
  json j;
  j["c_cal"] = num(cal.c_cal);
  j["c0"] = num(cal.c0);
  j["hold_fraction"] = num(cal.hold_fraction);
  j["ladder_steps"] = cal.ladder_steps;
  j["capped"] = cal.capped;
  j["pilot_duration"] = num(span);
  j["pilot_records"] = s.diag.pilot_records;
  write_json(dir / "calibration.json", j);
  return p;
}

std::vector<std::string> parameter_comments(const RunSpec& s, const diag::WavenumberParams& p, double bernstein) {
  return {"n=" + std::to_string(s.n) + " L=" + format_double(s.length) + " nu=" + format_double(s.nu) +
              " dt=" + format_double(s.dt) + " scheme=" + s.scheme + " seed=" + std::to_string(s.seed),
          "sigma=" + format_double(p.sigma) + " delta=" + format_double(p.delta) + " c_cal=" + format_double(p.c_cal) +
              " c0=" + format_double(p.c0) + " T=" + format_double(s.diag.window) +
              " transient=" + format_double(s.diag.transient) +
              (bernstein > 0.0 ? " bernstein=" + format_double(bernstein) : std::string())};
}

std::vector<std::string> diagnostics_columns(int q_max) {
  std::vector<std::string> cols = {"t",   "enstrophy", "palinstrophy", "grashof", "eta",
                                   "kappa_eta", "d", "lambda1", "lambda2", "lambda",
                                   "lambda_bar", "lambda_unresolved"};
  for (int q = -1; q <= q_max; ++q) cols.push_back("omega_l2_q" + std::to_string(q));
  for (int q = -1; q <= q_max; ++q) cols.push_back("omega_linf_q" + std::to_string(q));
  return cols;
}

std::vector<double> diagnostics_row(const diag::DiagnosticsRecord& r) {
  std::vector<double> v = {r.t,   r.enstrophy, r.palinstrophy, r.grashof, r.eta,
                           r.kappa_eta, r.d, r.lambda1, r.lambda2, r.lambda,
                           r.lambda_bar, r.lambda_unresolved ? 1.0 : 0.0};
  v.insert(v.end(), r.shell_l2.begin(), r.shell_l2.end());
  v.insert(v.end(), r.shell_linf.begin(), r.shell_linf.end());
  return v;
}

json summary_json(const diag::RunSummary& s) {
  json j;
  j["lambda_bar"] = num(s.lambda_bar);
  j["lambda_unresolved"] = s.lambda_unresolved;
  j["avg_palinstrophy"] = num(s.avg_palinstrophy);
  j["d"] = num(s.d);
  j["eta"] = num(s.eta);
  j["kappa_eta"] = num(s.kappa_eta);
  j["enstrophy_first_half"] = num(s.enstrophy_first);
  j["enstrophy_second_half"] = num(s.enstrophy_second);
  j["stationary"] = s.stationary;
  return j;
}

void run_simulate(const RunSpec& s, const fs::path& dir, RunManifest&) {
  const lp::Grid grid(s.n, s.length);
  const nse::Forcing forcing = make_forcing(s, grid);
  nse::FlowState state = initial_state(s, grid);
  const nse::FlowState start = state;
  nse::Stepper stepper(grid, s.nu, stepper_config(s));
  stepper.advance_to(state, forcing, s.spinup);

  CsvWriter series(dir / "series.csv", {"t", "energy", "enstrophy", "palinstrophy"});
  auto record = [&] {
    series.row({state.t, nse::kinetic_energy_norm_squared(state.omega), lp::l2_norm_squared(state.omega),
                lp::gradient_l2_squared(state.omega)});
  };
  record();
  const int samples = sample_count(s);
  for (int k = 1; k <= samples; ++k) {
    stepper.advance_to(state, forcing, s.spinup + k * s.output.cadence);
    record();
  }
  write_checkpoint(dir / "final", state, checkpoint_meta(s, grid, state));

  if (s.initial.kind == "taylor-green" && s.forcing.kind == "none") {
    // Unforced Taylor-Green decays in place: omega(t) = omega(0) exp(-2 nu kappa0^2 t).
    const double k0 = grid.kappa0();
    lp::SpectralField exact = start.omega;
    exact *= std::exp(-2.0 * s.nu * k0 * k0 * (state.t - start.t));
    const double err = lp::l2_norm(state.omega - exact);
    const double ref = lp::l2_norm(exact);
    json j;
    j["t"] = num(state.t);
    j["dt"] = num(s.dt);
    j["scheme"] = s.scheme;
    j["abs_l2_error"] = num(err);
    j["rel_l2_error"] = num(ref > 0.0 ? err / ref : err);
    write_json(dir / "error_report.json", j);
  }
}

void run_diagnose(const RunSpec& s, const fs::path& dir, RunManifest&) {
  const lp::Grid grid(s.n, s.length);
  const nse::Forcing forcing = make_forcing(s, grid);
  nse::FlowState state = spun_up(s, grid, forcing);

  diag::MonitorConfig mc;
  mc.nu = s.nu;
  mc.length = s.length;
  mc.grashof = diag::grashof_from_norm(forcing.force_l2_norm(), s.nu, s.length);
  mc.bernstein_constant = bernstein_constant(s, grid);
  mc.params = calibrated_params(s, sync_config(s, forcing, state), dir);
  mc.window = s.diag.window;
  mc.transient_fraction = s.diag.transient;

  diag::DiagnosticsMonitor monitor(mc);
  nse::Stepper stepper(grid, s.nu, stepper_config(s));
  CsvWriter csv(dir / "diagnostics.csv", diagnostics_columns(grid.q_max()),
                parameter_comments(s, mc.params, mc.bernstein_constant));
  diag::run_monitored(state, stepper, forcing, s.t_end, s.output.cadence, monitor,
                      [&](const diag::DiagnosticsRecord& r) { csv.row(diagnostics_row(r)); });
  write_checkpoint(dir / "final", state, checkpoint_meta(s, grid, state));

  const diag::RunSummary summary = diag::summarize(monitor);
  json j = summary_json(summary);
  j["grashof"] = num(mc.grashof);
  j["bernstein_constant"] = num(mc.bernstein_constant);
  j["c_cal"] = num(mc.params.c_cal);
  j["c0"] = num(mc.params.c0);
  j["kraichnan_bound"] = num(diag::kraichnan_bound(mc.grashof, summary.d, s.length));
  write_json(dir / "summary.json", j);
}

void write_sync_series(const fs::path& path, const sync::SyncRunResult& r,
                       const std::vector<std::string>& comments) {
  CsvWriter csv(path, {"t", "diff_u", "diff_omega", "low_diff", "master_omega", "flux", "dissipation",
                       "low_mode_term", "rhs", "ratio", "lambda", "phi", "psi", "denstrophy_dt"},
                comments);
  for (const auto& x : r.samples) {
    csv.row({x.t, x.diff_u, x.diff_omega, x.low_diff, x.master_omega, x.flux.flux, x.flux.dissipation,
             x.flux.low_mode_term, x.flux.rhs, x.flux.ratio, x.flux.lambda.value, x.phi, x.psi, x.denstrophy_dt});
  }
}

json fit_json(const sync::DecayFit& f) {
  json j;
  j["rate"] = num(f.rate);
  j["rate_stderr"] = num(f.rate_stderr);
  j["p_value"] = num(f.p_value);
  j["points"] = f.points;
  j["floor_reached"] = f.floor_reached;
  j["floor_time"] = num(f.floor_time);
  return j;
}

void run_sync(const RunSpec& s, const fs::path& dir, RunManifest& manifest) {
  const lp::Grid grid(s.n, s.length);
  const nse::Forcing forcing = make_forcing(s, grid);
  sync::SyncConfig cfg = sync_config(s, forcing, spun_up(s, grid, forcing));
  cfg.params = calibrated_params(s, cfg, dir);
  const sync::SyncRunResult r = sync::run_sync(cfg);
  write_sync_series(dir / "sync.csv", r, parameter_comments(s, cfg.params, 0.0));

  json j;
  j["Q"] = cfg.Q;
  j["lambda_Q"] = num(grid.shell_wavenumber(cfg.Q));
  j["coupling"] = s.sync.coupling;
  j["verdict"] = sync::to_string(r.verdict);
  j["fit"] = fit_json(r.fit);
  j["lambda_bar"] = num(r.lambda_bar);
  j["lambda_unresolved"] = r.lambda_unresolved;
  j["q_bar"] = r.q_bar;
  j["max_flux_ratio"] = num(r.max_flux_ratio);
  j["initial_diff_omega"] = num(r.samples.front().diff_omega);
  j["final_diff_omega"] = num(r.samples.back().diff_omega);
  j["c_cal"] = num(cfg.params.c_cal);
  j["c0"] = num(cfg.params.c0);
  write_json(dir / "summary.json", j);
  manifest.verdict = sync::to_string(r.verdict);
  manifest.inconclusive = r.verdict == sync::Verdict::inconclusive;
}

void run_critical_q(const RunSpec& s, const fs::path& dir, RunManifest& manifest) {
  const lp::Grid grid(s.n, s.length);
  const nse::Forcing forcing = make_forcing(s, grid);
  sync::SyncConfig cfg = sync_config(s, forcing, spun_up(s, grid, forcing));
  cfg.params = calibrated_params(s, cfg, dir);
  const sync::CriticalQTable t = sync::find_critical_q(cfg, s.sync.q_values);

  CsvWriter csv(dir / "critical_q.csv", {"Q", "lambda_q", "verdict", "rate", "rate_stderr", "p_value",
                                         "lambda_bar", "lambda_unresolved", "initial_diff", "final_diff",
                                         "max_flux_ratio"});
  for (const auto& r : t.rows) {
    csv.row_text({std::to_string(r.Q), format_double(r.lambda_q), sync::to_string(r.verdict),
                  format_double(r.fit.rate), format_double(r.fit.rate_stderr), format_double(r.fit.p_value),
                  format_double(r.lambda_bar), r.lambda_unresolved ? "1" : "0", format_double(r.initial_diff),
                  format_double(r.final_diff), format_double(r.max_flux_ratio)});
  }
  json j;
  j["q_star"] = t.q_star;
  j["found"] = t.found;
  j["lambda_q_star"] = num(grid.shell_wavenumber(t.q_star));
  j["transitions"] = t.transitions;
  j["inconclusive"] = t.inconclusive;
  j["monotone"] = t.monotone;
  j["lambda_bar"] = num(t.lambda_bar);
  j["q_theorem"] = t.q_theorem;
  j["c_cal"] = num(cfg.params.c_cal);
  j["c0"] = num(cfg.params.c0);
  write_json(dir / "summary.json", j);
  manifest.inconclusive = t.inconclusive > 0;
  manifest.verdict = t.found ? "q_star=" + std::to_string(t.q_star) : "no synchronizing cutoff";
}

void run_scaling(const RunSpec& s, const fs::path& dir, RunManifest&) {
  const lp::Grid grid(s.n, s.length);
  diag::ScalingStudyConfig cfg;
  cfg.n = s.n;
  cfg.length = s.length;
  cfg.nu = s.nu;
  cfg.amplitudes = s.scaling.amplitudes;
  cfg.forcing_shell = s.forcing.shell;
  cfg.seed = s.seed;
  cfg.initial_fraction = s.scaling.initial_fraction;
  cfg.spinup = s.spinup;
  cfg.duration = s.t_end - s.spinup;
  cfg.sample_interval = s.output.cadence;
  cfg.stepper = stepper_config(s);
  cfg.window = s.diag.window;
  cfg.transient_fraction = s.diag.transient;
  cfg.bernstein_constant = bernstein_constant(s, grid);
  cfg.params = wavenumber_params(s);
  if (s.diag.calibrate) {
    // One sweep-wide c0, calibrated at the strongest forcing.
    const double amax = *std::max_element(cfg.amplitudes.begin(), cfg.amplitudes.end());
    const nse::Forcing forcing = nse::kolmogorov(grid, amax, cfg.forcing_shell);
    const double g = diag::grashof_from_norm(forcing.force_l2_norm(), s.nu, s.length);
    nse::NoiseSpec noise;
    noise.l2_norm = cfg.initial_fraction * s.nu * grid.kappa0() * g;
    nse::FlowState master{nse::random_vorticity(grid, s.seed, noise), 0.0, s.nu};
    nse::Stepper(grid, s.nu, cfg.stepper).advance_to(master, forcing, s.spinup);
    sync::SyncConfig pilot = sync_config(s, forcing, master);
    pilot.initial = noise;
    cfg.params = calibrated_params(s, pilot, dir);
  }

  std::map<std::size_t, std::unique_ptr<CsvWriter>> writers;
  const auto cols = diagnostics_columns(grid.q_max());
  const diag::ScalingTable table = diag::scaling_study(cfg, [&](std::size_t run, const diag::DiagnosticsRecord& r) {
    auto& w = writers[run];
    if (!w) {
      w = std::make_unique<CsvWriter>(dir / ("diagnostics_run" + std::to_string(run) + ".csv"), cols,
                                      parameter_comments(s, cfg.params, cfg.bernstein_constant));
    }
    w->row(diagnostics_row(r));
  });

  CsvWriter csv(dir / "scaling.csv", {"amplitude", "grashof", "d", "eta", "kappa_eta", "kraichnan_bound",
                                      "lambda_bar", "avg_palinstrophy", "lambda_unresolved", "stationary"});
  for (const auto& r : table.rows) {
    csv.row({r.amplitude, r.grashof, r.d, r.eta, r.kappa_eta, r.kraichnan_bound, r.lambda_bar,
             r.avg_palinstrophy, r.lambda_unresolved ? 1.0 : 0.0, r.stationary ? 1.0 : 0.0});
  }
  json j;
  j["exponent"] = num(table.fit.exponent);
  j["exponent_stderr"] = num(table.fit.exponent_stderr);
  j["intercept"] = num(table.fit.intercept);
  j["mean_d"] = num(table.fit.mean_d);
  j["predicted_exponent"] = num(table.fit.predicted);
  j["points"] = table.fit.points;
  j["bernstein_constant"] = num(cfg.bernstein_constant);
  j["c_cal"] = num(cfg.params.c_cal);
  j["c0"] = num(cfg.params.c0);
  write_json(dir / "fit.json", j);
}

void run_calibrate_cb(const RunSpec& s, const fs::path& dir, RunManifest&) {
  const lp::Grid grid(s.n, s.length);
  const lp::BernsteinCalibration cal =
      lp::calibrate_bernstein(grid, s.calibrate.samples, s.seed, s.calibrate.q_lo, s.calibrate.q_hi);
  CsvWriter csv(dir / "bernstein.csv", {"q", "max_ratio"});
  for (std::size_t i = 0; i < cal.shell_max.size(); ++i) {
    csv.row({static_cast<double>(cal.q_lo + static_cast<int>(i)), cal.shell_max[i]});
  }
  json j;
  j["n"] = cal.n;
  j["L"] = num(cal.length);
  j["samples_per_shell"] = cal.samples_per_shell;
  j["seed"] = cal.seed;
  j["q_lo"] = cal.q_lo;
  j["q_hi"] = cal.q_hi;
  j["extremizer_ratio"] = num(cal.extremizer_ratio);
  j["c_b"] = num(cal.c_b);
  write_json(dir / "bernstein.json", j);
}

}  // namespace

nse::Forcing make_forcing(const RunSpec& s, const lp::Grid& grid) {
  if (s.forcing.kind == "none") return nse::Forcing::none(grid);
  return nse::kolmogorov(grid, forcing_amplitude(s, grid), s.forcing.shell);
}

nse::FlowState initial_state(const RunSpec& s, const lp::Grid& grid) {
  const auto& k = s.initial.kind;
  if (k == "zero") return {lp::SpectralField(grid), 0.0, s.nu};
  if (k == "taylor-green") return {nse::taylor_green(grid, s.initial.amplitude), 0.0, s.nu};
  if (k == "checkpoint") {
    Checkpoint cp = read_checkpoint(s.initial.checkpoint);
    if (!(cp.state.grid() == grid)) throw ConfigError("initial.checkpoint grid does not match n and L");
    // The recorded timeline restarts at zero.
    return {std::move(cp.state.omega), 0.0, s.nu};
  }
  return {nse::random_vorticity(grid, s.seed, noise_spec(s)), 0.0, s.nu};
}

RunManifest execute(const RunSpec& spec) {
  validate(spec);
  const fs::path dir = spec.output.dir;
  fs::create_directories(dir);

  RunManifest m;
  m.experiment = to_string(spec.experiment);
  m.spec_hash = spec_hash(spec);
  m.version = kVersion;
  m.started = utc_timestamp();

  auto finish = [&] {
    m.finished = utc_timestamp();
    m.files = list_outputs(dir);
    write_manifest(dir, m);
  };

  try {
    {
      std::ofstream out(dir / "spec.json");
      out << serialize_spec(spec);
    }
    switch (spec.experiment) {
      case Experiment::simulate: run_simulate(spec, dir, m); break;
      case Experiment::diagnose: run_diagnose(spec, dir, m); break;
      case Experiment::sync: run_sync(spec, dir, m); break;
      case Experiment::critical_q: run_critical_q(spec, dir, m); break;
      case Experiment::scaling: run_scaling(spec, dir, m); break;
      case Experiment::calibrate_cb: run_calibrate_cb(spec, dir, m); break;
    }
  } catch (const ConfigError& e) {
    m.status = RunStatus::failed;
    m.error = e.what();
    finish();
    throw;
  } catch (const std::exception& e) {
    m.status = RunStatus::failed;
    m.error = e.what();
  }
  finish();
  return m;
}

void export_spectra(const fs::path& checkpoint, const fs::path& out) {
  const Checkpoint cp = read_checkpoint(checkpoint);
  const diag::ShellProfile p = diag::compute_shell_profile(cp.state.omega, cp.state.t);
  const lp::Grid& g = cp.state.grid();
  CsvWriter csv(out, {"q", "lambda_q", "u_l2", "omega_l2", "omega_linf"},
                {"n=" + std::to_string(g.n()) + " L=" + format_double(g.length()) + " t=" + format_double(cp.meta.t) +
                     " nu=" + format_double(cp.meta.nu) + " dt=" + format_double(cp.meta.dt),
                 "forcing=" + cp.meta.forcing_kind + " amplitude=" + format_double(cp.meta.forcing_amplitude) +
                     " shell=" + std::to_string(cp.meta.forcing_shell) + " seed=" + std::to_string(cp.meta.seed)});
  for (int q = -1; q <= p.q_max; ++q) {
    const std::size_t i = diag::ShellProfile::slot(q);
    csv.row({static_cast<double>(q), g.shell_wavenumber(q), p.velocity_l2[i], p.vorticity_l2[i],
             p.vorticity_linf[i]});
  }
}

}  // namespace detmodes::io
