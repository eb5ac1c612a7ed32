// Acceptance suite: one PASS/FAIL line per criterion.
//
//   detmodes_acceptance                 run all criteria
//   detmodes_acceptance --criterion 8   run one (repeatable)
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "detmodes/diag/grashof.hpp"
#include "detmodes/diag/intermittency.hpp"
#include "detmodes/diag/kraichnan.hpp"
#include "detmodes/diag/monitor.hpp"
#include "detmodes/diag/scaling.hpp"
#include "detmodes/diag/shell_profile.hpp"
#include "detmodes/diag/wavenumber.hpp"
#include "detmodes/io/execute.hpp"
#include "detmodes/io/run_spec.hpp"
#include "detmodes/lp/littlewood_paley.hpp"
#include "detmodes/lp/norms.hpp"
#include "detmodes/nse/audit.hpp"
#include "detmodes/nse/forcing.hpp"
#include "detmodes/nse/initial.hpp"
#include "detmodes/nse/stepper.hpp"
#include "detmodes/sync/critical_q.hpp"
#include "detmodes/sync/flux_monitor.hpp"
#include "detmodes/sync/groenwall.hpp"
#include "detmodes/sync/sync_run.hpp"
#include "fields.hpp"
#include "oracles.hpp"

namespace {

using namespace detmodes;
namespace fs = std::filesystem;
namespace oracle = detmodes::testing;
using lp::Grid;
using lp::SpectralField;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// --- 1. partition of unity ---

Outcome partition_of_unity() {
  const Grid g(256, kTwoPi);
  const auto basis = lp::shell_basis(g);
  double worst = 0.0;
  int points = 0;
  lp::for_each_mode(g, [&](int row, int col, int kx, int ky) {
    if (!g.dealiased(kx, ky)) return;
    const std::size_t i = g.index(row, col);
    double sum = 0.0;
    for (int q = -1; q <= g.q_max(); ++q) sum += basis->shell(q)[i];
    worst = std::max(worst, std::abs(sum - 1.0));
    ++points;
  });
  return {worst < 1e-12, fmt("max |chi + sum phi_q - 1| = %.3g over %d dealiased modes (tol 1e-12)", worst, points)};
}

// --- 2. Taylor-Green regression ---

double taylor_green_error(double dt, nse::Scheme scheme) {
  const Grid g(128, kTwoPi);
  const double nu = 0.1;
  nse::StepperConfig cfg;
  cfg.dt = dt;
  cfg.scheme = scheme;
  nse::Stepper stepper(g, nu, cfg);
  const SpectralField w0 = nse::taylor_green(g);
  nse::FlowState s{w0, 0.0, nu};
  stepper.advance_to(s, nse::Forcing::none(g), 1.0);
  const SpectralField exact = w0 * std::exp(-2.0 * nu * s.t);
  return lp::l2_norm(s.omega - exact) / lp::l2_norm(exact);
}

// Temporal self-convergence of the full nonlinear step on a random flow.
double nonlinear_convergence_ratio() {
  const Grid g(64, kTwoPi);
  nse::NoiseSpec spec;
  spec.k_hi = 10.0;
  spec.l2_norm = 10.0;
  const SpectralField w0 = nse::random_vorticity(g, 5, spec);
  auto run = [&](double dt) {
    nse::StepperConfig cfg;
    cfg.dt = dt;
    nse::Stepper st(g, 0.01, cfg);
    nse::FlowState s{w0, 0.0, 0.01};
    st.advance_to(s, nse::Forcing::none(g), 0.5);
    return s.omega;
  };
  const SpectralField ref = run(1.25e-3);
  const double e1 = lp::l2_norm(run(2e-2) - ref);
  const double e2 = lp::l2_norm(run(1e-2) - ref);
  return e1 / e2;
}

Outcome taylor_green() {
  const double e1 = taylor_green_error(1e-3, nse::Scheme::etdrk4);
  const double e2 = taylor_green_error(5e-4, nse::Scheme::etdrk4);
  const double ratio = e1 / e2;
  const bool pass = e1 < 1e-6 && ratio >= 8.0;
  std::string d = fmt("rel error %.3g at dt=1e-3 (tol 1e-6), %.3g at dt=5e-4, reduction %.3gx (need >= 8)", e1, e2,
                      ratio);
  if (!pass && e1 < 1e-6) {
    d += fmt("; both errors are round-off because the exponential integrator solves the "
             "linear decay exactly (nonlinear self-convergence ratio %.3gx)",
             nonlinear_convergence_ratio());
  }
  return {pass, d};
}

// --- 3. enstrophy balance ---

Outcome enstrophy_balance() {
  const Grid g(256, kTwoPi);
  const double nu = 5e-3;
  const nse::Forcing f = nse::kolmogorov(g, nse::kolmogorov_amplitude_for_grashof(g, nu, 1e4, 2), 2);
  nse::NoiseSpec spec;
  spec.k_hi = 32.0;
  spec.l2_norm = 20.0;
  nse::StepperConfig cfg;
  cfg.dt = 1e-3;
  nse::Stepper stepper(g, nu, cfg);
  nse::FlowState s{nse::random_vorticity(g, 17, spec), 0.0, nu};
  stepper.advance_to(s, f, 0.5);

  // Trapezoid budget accumulated step by step; each step is a two-state history.
  const double span = 1.0;
  const int steps = static_cast<int>(std::lround(span / cfg.dt));
  const double e0 = 0.5 * lp::l2_norm_squared(s.omega);
  double change = 0.0, diss = 0.0, inj = 0.0;
  for (int i = 0; i < steps; ++i) {
    nse::FlowState prev = s;
    stepper.advance(s, f);
    const nse::EnstrophyBudget b = nse::enstrophy_budget({prev, s}, f);
    change += b.enstrophy_change;
    diss += b.dissipation;
    inj += b.injection;
  }
  const double residual = std::abs(change + diss - inj) / std::max(1.0, e0) / span;
  return {residual < 1e-4,
          fmt("residual %.3g per unit time over t in [0.5, 1.5] (tol 1e-4); dissipation %.4g, injection %.4g, "
              "enstrophy change %.4g",
              residual, diss, inj, change)};
}

// --- 4. absorbing ball ---

Outcome absorbing_ball() {
  const Grid g(64, kTwoPi);
  const double nu = 0.05;
  const double duration = 40.0, transient = 20.0, sample = 0.1;
  bool pass = true;
  std::string d;
  for (double G : {10.0, 50.0, 200.0}) {
    const nse::Forcing f = nse::kolmogorov(g, nse::kolmogorov_amplitude_for_grashof(g, nu, G, 2), 2);
    const double radius = nu * g.kappa0() * G;
    nse::NoiseSpec spec;
    spec.l2_norm = 0.5 * radius;
    nse::StepperConfig cfg;
    cfg.dt = 5e-3;
    nse::Stepper stepper(g, nu, cfg);
    nse::FlowState s{nse::random_vorticity(g, 23, spec), 0.0, nu};
    double worst = 0.0;
    const int samples = static_cast<int>(std::lround(duration / sample));
    for (int k = 1; k <= samples; ++k) {
      stepper.advance_to(s, f, k * sample);
      if (s.t > transient) worst = std::max(worst, lp::l2_norm(s.omega) / radius);
    }
    const double G_measured = diag::grashof_steady(f, nu, g.length());
    pass = pass && worst <= 1.0;
    d += fmt("G=%.4g: max ||omega||/(nu kappa0 G) = %.4f; ", G_measured, worst);
  }
  d += "post-transient t in (20, 40], need <= 1";
  return {pass, d};
}

// --- 5. wavenumber oracle ---

Outcome wavenumber_oracle() {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> qdist(2, 8);
  std::uniform_real_distribution<double> sig(0.1, 1.9);
  int mismatches = 0, unresolved = 0, interior = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int q_max = qdist(rng);
    diag::WavenumberParams params;
    params.sigma = sig(rng);
    params.c0 = diag::WavenumberParams::default_c0(params.sigma, params.c_cal);
    const double nu = 0.03;
    const double L = trial % 3 == 0 ? 1.0 : kTwoPi;
    for (int variant = 1; variant <= 2; ++variant) {
      const int bp = variant == 1 ? 1 : 2;
      const int gp = variant == 1 ? 2 : 3;
      const diag::CriticalNorms n = oracle::random_critical_norms(rng, q_max, L, params.c0, nu, bp, gp);
      const diag::Wavenumber got = variant == 1 ? diag::determining_wavenumber_1(n, params, nu)
                                                : diag::determining_wavenumber_2(n, params, nu);
      const auto want =
          oracle::brute_force_wavenumber(n.band, n.grad_low, L, q_max, params.sigma, params.c0, nu, bp, gp);
      if (got.shell != want.shell || got.value != want.value || got.unresolved != want.unresolved) ++mismatches;
      unresolved += want.unresolved;
      interior += !want.unresolved && want.shell > 0;
    }
  }
  return {mismatches == 0, fmt("%d mismatches over 1000 profiles x 2 wavenumbers (need 0); %d unresolved, %d "
                               "interior cases",
                               mismatches, unresolved, interior)};
}

// --- 6. intermittency oracle ---

Outcome intermittency_oracle() {
  std::mt19937_64 rng(6006);
  std::uniform_real_distribution<double> cbd(1.0, 4.0);
  std::uniform_int_distribution<int> len(1, 6);
  double worst = 0.0;
  int interior = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double cb = cbd(rng);
    std::vector<diag::ShellProfile> hist;
    const int count = len(rng);
    for (int i = 0; i < count; ++i) hist.push_back(oracle::synthetic_profile(rng, 0.25 * i, 6, kTwoPi, 0.2));
    const double d = diag::intermittency_dimension(hist, cb);
    worst = std::max(worst, std::abs(d - oracle::fine_dimension_scan(hist, cb)));
    interior += d > 0.0 && d < 2.0;
  }
  const Grid g(64, kTwoPi);
  const std::vector<diag::ShellProfile> zero{diag::compute_shell_profile(SpectralField(g), 0.0),
                                             diag::compute_shell_profile(SpectralField(g), 1.0)};
  const double dz = diag::intermittency_dimension(zero, 2.0);
  return {worst <= 0.01 && dz == 2.0,
          fmt("max |d - fine scan| = %.3g over 100 profiles (tol 0.01, %d interior); zero field d = %.17g (need 2)",
              worst, interior, dz)};
}

// --- 7. flux identity ---

Outcome flux_identity() {
  const Grid g(32, kTwoPi);
  struct Case {
    std::vector<std::pair<int, int>> diff, master;
  };
  const std::vector<Case> cases{
      {{{1, 0}}, {{1, 1}}},
      {{{1, 0}, {0, 1}}, {{1, 1}}},
      {{{2, 1}, {-1, 3}}, {{1, -2}, {3, 1}}},
      {{{1, 2}}, {{2, 4}, {0, 3}}},
      {{{1, 0}, {1, 2}}, {{0, 2}}},
      {{{3, 0}, {1, 1}, {0, 2}}, {{2, -1}, {1, 3}, {4, 0}}},
  };
  double conv_err = 0.0, largest = 0.0;
  int seed = 1;
  for (const auto& c : cases) {
    SpectralField diff(g), master(g);
    for (const auto& [kx, ky] : c.diff) diff.set_mode(kx, ky, {0.3 * seed, -0.7 + 0.1 * seed});
    for (const auto& [kx, ky] : c.master) master.set_mode(kx, ky, {-0.4, 0.2 * seed});
    ++seed;
    const double want = oracle::convolution_flux(diff, master);
    const double got = sync::flux_term(master + diff, master);
    conv_err = std::max(conv_err, std::abs(got - want) / std::max(1.0, std::abs(want)));
    largest = std::max(largest, std::abs(want));
  }
  const Grid gb(64, kTwoPi);
  double bony_err = 0.0;
  for (std::uint64_t k = 1; k <= 100; ++k) {
    const SpectralField a = oracle::random_field(gb, 1000 + k);
    const SpectralField b = oracle::random_field(gb, 2000 + k);
    const double i = sync::flux_term(a, b);
    bony_err = std::max(bony_err, std::abs(sync::bony_split(a, b).total() - i) / std::abs(i));
  }
  return {conv_err <= 1e-12 && bony_err <= 1e-10 && largest > 1e-2,
          fmt("convolution oracle max error %.3g (tol 1e-12, largest |I| %.3g); Bony split max relative error "
              "%.3g over 100 pairs (tol 1e-10)",
              conv_err, largest, bony_err)};
}

// --- 8. synchronization at the theorem's cutoff ---

nse::FlowState spun_up_master(const Grid& g, double nu, const nse::Forcing& f, double l2, double dt, double spinup) {
  nse::NoiseSpec spec;
  spec.l2_norm = l2;
  nse::StepperConfig cfg;
  cfg.dt = dt;
  nse::Stepper st(g, nu, cfg);
  nse::FlowState s{nse::random_vorticity(g, 11, spec), 0.0, nu};
  st.advance_to(s, f, spinup);
  return s;
}

Outcome synchronization() {
  const Grid g(256, kTwoPi);
  const double nu = 0.15, G = 50.0, dt = 5e-3;
  const nse::Forcing f = nse::kolmogorov(g, nse::kolmogorov_amplitude_for_grashof(g, nu, G, 2), 2);

  sync::SyncConfig cfg;
  cfg.n = g.n();
  cfg.length = g.length();
  cfg.nu = nu;
  cfg.forcing = f;
  cfg.master_start = spun_up_master(g, nu, f, 0.5 * nu * G, dt, 30.0);
  cfg.slave_seed = 12;  // independent draw on the master's scale
  cfg.duration = 20.0;
  cfg.sample_interval = 0.2;
  cfg.stepper.dt = dt;
  cfg.lambda_window = 5.0;
  const sync::CCalCalibration cal = sync::calibrate_from_pilot(cfg, 10.0, 50);
  cfg.params.c_cal = cal.c_cal;
  cfg.params.c0 = cal.c0;

  cfg.coupling = sync::Coupling::none;
  const sync::SyncRunResult free = sync::run_sync(cfg);
  const double free_ratio = free.samples.back().diff_omega / free.samples.front().diff_omega;

  cfg.coupling = sync::Coupling::replace;
  cfg.Q = diag::shell_at_or_above(free.lambda_bar, g.length());
  const sync::SyncRunResult run = sync::run_sync(cfg);
  const double lambda_q = g.shell_wavenumber(cfg.Q);
  const double final_diff = run.samples.back().diff_omega;
  const sync::GroenwallReport gr = sync::groenwall_monitor(run, cfg.lambda_window);

  const bool pass = !free.lambda_unresolved && lambda_q >= free.lambda_bar * (1.0 - 1e-12) && run.fit.rate < 0.0 &&
                    final_diff < 1e-8 && free_ratio > 1e-2;
  return {pass, fmt("G=%.4g, c_cal=%.4g, Lambda-bar=%.4g (shell %d%s), Q=%d with lambda_Q=%.4g: decay rate %.4g, "
                    "final diff %.3g (need < 1e-8, verdict %s); uncoupled final/initial %.4g (need > 1e-2); "
                    "Gronwall inequality holds at %.0f%% of samples",
                    diag::grashof_steady(f, nu, g.length()), cal.c_cal, free.lambda_bar, free.q_bar,
                    free.lambda_unresolved ? ", unresolved" : "", cfg.Q, lambda_q, run.fit.rate, final_diff,
                    sync::to_string(run.verdict), free_ratio, 100.0 * gr.hold_fraction)};
}

// --- 9. critical-Q sweep ---

Outcome critical_q() {
  const Grid g(128, kTwoPi);
  const double nu = 0.0075, G = 2e4, dt = 5e-3;
  const nse::Forcing f = nse::kolmogorov(g, nse::kolmogorov_amplitude_for_grashof(g, nu, G, 2), 2);

  sync::SyncConfig cfg;
  cfg.n = g.n();
  cfg.length = g.length();
  cfg.nu = nu;
  cfg.forcing = f;
  cfg.master_start = spun_up_master(g, nu, f, 0.05 * nu * G, dt, 50.0);
  cfg.slave_seed = 12;
  cfg.slave_perturbation = 1e-10;
  cfg.duration = 150.0;
  cfg.sample_interval = 1.5;
  cfg.stepper.dt = dt;
  cfg.lambda_window = 30.0;
  const sync::CCalCalibration cal = sync::calibrate_from_pilot(cfg, 30.0, 50);
  cfg.params.c_cal = cal.c_cal;
  cfg.params.c0 = cal.c0;

  const std::vector<int> qs{-1, 0, 1, 2, 3, 4};
  const sync::CriticalQTable t = sync::find_critical_q(cfg, qs);
  std::string rows;
  for (const auto& r : t.rows) rows += fmt("Q=%d %s (rate %.3g); ", r.Q, sync::to_string(r.verdict), r.fit.rate);
  const double lambda_star = g.shell_wavenumber(t.q_star);
  const bool unresolved = std::any_of(t.rows.begin(), t.rows.end(), [](const auto& r) { return r.lambda_unresolved; });
  const bool pass = t.found && t.monotone && t.transitions == 1 && !unresolved &&
                    lambda_star <= t.lambda_bar * (1.0 + 1e-12);
  return {pass, fmt("c_cal=%.4g; ", cal.c_cal) + rows +
                    fmt("transitions %d (need 1), %d inconclusive; Q*=%d with lambda_Q*=%.4g <= Lambda-bar=%.4g "
                        "(shell %d)%s",
                        t.transitions, t.inconclusive, t.q_star, lambda_star, t.lambda_bar, t.q_theorem,
                        unresolved ? "; Lambda unresolved on the grid" : "")};
}

// --- 10. scaling consistency ---

Outcome scaling() {
  const Grid g(128, kTwoPi);
  const double nu = 0.0075, dt = 5e-3;
  diag::ScalingStudyConfig cfg;
  cfg.n = g.n();
  cfg.length = g.length();
  cfg.nu = nu;
  cfg.forcing_shell = 2;
  const double top = nse::kolmogorov_amplitude_for_grashof(g, nu, 2e4, 2);
  cfg.amplitudes = {top / 16.0, top / 4.0, top};
  cfg.seed = 11;
  cfg.spinup = 50.0;
  cfg.duration = 60.0;
  cfg.sample_interval = 0.5;
  cfg.stepper.dt = dt;
  cfg.window = 15.0;
  cfg.bernstein_constant = lp::calibrate_bernstein(g, 100, 1).c_b;

  // One sweep-wide c0, calibrated on a pilot pair at the strongest forcing.
  const nse::Forcing f_top = nse::kolmogorov(g, top, cfg.forcing_shell);
  sync::SyncConfig pilot;
  pilot.n = g.n();
  pilot.length = g.length();
  pilot.nu = nu;
  pilot.forcing = f_top;
  pilot.master_start = spun_up_master(g, nu, f_top, 0.05 * nu * 2e4, dt, cfg.spinup);
  pilot.slave_seed = 12;
  pilot.slave_perturbation = 1e-10;
  pilot.stepper.dt = dt;
  pilot.coupling = sync::Coupling::none;
  const sync::CCalCalibration cal = sync::calibrate_from_pilot(pilot, 30.0, 50);
  cfg.params.c_cal = cal.c_cal;
  cfg.params.c0 = cal.c0;

  const diag::ScalingTable table = diag::scaling_study(cfg);
  const diag::ScalingFit& fit = table.fit;
  bool kraichnan_ok = true;
  double c_max = 0.0, c_min = std::numeric_limits<double>::infinity();
  int c_runs = 0;
  std::string rows;
  for (const auto& r : table.rows) {
    const double bound = diag::kraichnan_bound(r.grashof, fit.mean_d, g.length()) * 1.1;
    kraichnan_ok = kraichnan_ok && r.kappa_eta <= bound;
    rows += fmt("G=%.4g d=%.3f Lambda-bar=%.4g kappa_eta=%.4g (bound %.4g)%s%s; ", r.grashof, r.d, r.lambda_bar,
                r.kappa_eta, bound, r.stationary ? "" : " non-stationary", r.lambda_unresolved ? " unresolved" : "");
    if (r.d >= 2.0 * cfg.params.sigma && r.kappa_eta > 0.0) {
      c_max = std::max(c_max, r.lambda_bar / r.kappa_eta);
      c_min = std::min(c_min, r.lambda_bar / r.kappa_eta);
      ++c_runs;
    }
  }
  const bool exponent_ok = std::abs(fit.exponent - fit.predicted) <= 0.15;
  std::string c_note = c_runs > 0 ? fmt("Lambda-bar <= C kappa_eta with C=%.4g over %d runs with d >= 2 sigma "
                                        "(ratio spread %.4g..%.4g)",
                                        c_max, c_runs, c_min, c_max)
                                  : std::string("no run has d >= 2 sigma, so the Lambda-bar/kappa_eta check is vacuous");
  return {exponent_ok && kraichnan_ok,
          fmt("c_cal=%.4g; ", cal.c_cal) + rows +
              fmt("exponent %.4f +- %.3g vs 2/(d+4)=%.4f with mean d=%.3f (tol 0.15); kappa_eta bound %s; ",
                  fit.exponent, fit.exponent_stderr, fit.predicted, fit.mean_d, kraichnan_ok ? "holds" : "violated") +
              c_note};
}

// --- 11. determinism ---

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "detmodes_acceptance_determinism";
  fs::remove_all(root);
  io::RunSpec base;
  base.n = 64;
  base.nu = 0.01;
  base.dt = 5e-3;
  base.spinup = 1.0;
  base.t_end = 4.0;
  base.output.cadence = 0.05;
  base.seed = 42;
  base.forcing.kind = "kolmogorov";
  base.forcing.grashof = 2000.0;
  base.initial.l2_norm = 5.0;
  base.diag.window = 1.0;
  base.diag.bernstein = 0.0;
  base.calibrate.samples = 20;
  base.sync.Q = 2;

  int compared = 0, differing = 0;
  std::string failures;
  for (io::Experiment e : {io::Experiment::diagnose, io::Experiment::sync}) {
    std::vector<fs::path> dirs;
    for (int rep = 0; rep < 2; ++rep) {
      io::RunSpec s = base;
      s.experiment = e;
      s.output.dir = (root / (std::string(io::to_string(e)) + "_" + std::to_string(rep))).string();
      const io::RunManifest m = io::execute(s);
      if (m.status != io::RunStatus::ok) failures += std::string(io::to_string(e)) + " failed: " + m.error + "; ";
      dirs.push_back(s.output.dir);
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      if (entry.path().extension() != ".csv") continue;
      ++compared;
      if (file_bytes(entry.path()) != file_bytes(dirs[1] / entry.path().filename())) ++differing;
    }
  }
  fs::remove_all(root);
  return {failures.empty() && compared >= 2 && differing == 0,
          failures + fmt("%d diagnostics CSVs compared across reruns, %d differ (need 0)", compared, differing)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "partition of unity", partition_of_unity},
      {2, "Taylor-Green regression", taylor_green},
      {3, "enstrophy balance", enstrophy_balance},
      {4, "absorbing ball", absorbing_ball},
      {5, "wavenumber oracle equivalence", wavenumber_oracle},
      {6, "intermittency oracle", intermittency_oracle},
      {7, "flux identity", flux_identity},
      {8, "synchronization above the determining wavenumber", synchronization},
      {9, "critical-Q monotonicity", critical_q},
      {10, "scaling consistency", scaling},
      {11, "determinism", determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else if (arg == "--list") {
      for (const auto& c : criteria()) std::printf("%d %s\n", c.id, c.title);
      return 0;
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]... [--list]\n", argv[0]);
      return 2;
    }
  }
  bool all_pass = true;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s: %s [%.1f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
