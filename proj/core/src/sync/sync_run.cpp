#include "detmodes/sync/sync_run.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "detmodes/errors.hpp"
#include "detmodes/lp/littlewood_paley.hpp"
#include "detmodes/lp/norms.hpp"

namespace detmodes::sync {

const char* to_string(Coupling c) noexcept {
  switch (c) {
    case Coupling::none: return "none";
    case Coupling::replace: return "replace";
    case Coupling::nudge: return "nudge";
  }
  return "?";
}

Coupling coupling_from_string(const std::string& s) {
  if (s == "none") return Coupling::none;
  if (s == "replace") return Coupling::replace;
  if (s == "nudge") return Coupling::nudge;
  throw ConfigError("unknown coupling '" + s + "' (expected none, replace or nudge)");
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::synchronized: return "synchronized";
    case Verdict::not_synchronized: return "not_synchronized";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

void SyncConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  const lp::Grid grid(n, length);
  if (!(nu > 0.0)) fail("nu must be positive");
  if (Q < -1) fail("Q must be >= -1");
  if (coupling == Coupling::nudge && !(mu > 0.0)) fail("nudging rate mu must be positive");
  if (!(duration > 0.0)) fail("duration must be positive");
  if (!(stepper.dt > 0.0)) fail("dt must be positive");
  if (!(sample_interval >= stepper.dt)) fail("sample_interval must be at least dt");
  if (!(slave_perturbation >= 0.0)) fail("slave_perturbation must be non-negative");
  if (!(lambda_window > 0.0)) fail("lambda_window must be positive");
  if (!(transient_fraction >= 0.0 && transient_fraction < 1.0)) fail("transient_fraction must lie in [0,1)");
  if (lambda_window > duration * (1.0 - transient_fraction) * (1.0 + 1e-9)) {
    fail("lambda_window must fit in the post-transient part of the run");
  }
  params.validate();
  if (forcing && (forcing->grid().n() != n || forcing->grid().length() != length)) {
    throw MismatchError("forcing grid does not match the run grid");
  }
  if (master_start) {
    if (master_start->grid().n() != n || master_start->grid().length() != length) {
      throw MismatchError("master_start grid does not match the run grid");
    }
    if (master_start->nu != nu) throw MismatchError("master_start viscosity does not match nu");
  }
}

void replace_low_modes(const lp::SpectralField& master, lp::SpectralField& slave, int cutoff) {
  lp::require_same_grid(master.grid(), slave.grid(), "replace_low_modes");
  const lp::Grid& g = master.grid();
  if (cutoff < -1) throw std::out_of_range("replacement cutoff must be >= -1");
  // Every stored mode has |k|^2 <= n^2 / 2 < 4^{q_max + 2}.
  const long long radius2 = cutoff > g.q_max() ? std::numeric_limits<long long>::max()
                                               : 1LL << (2 * (cutoff + 1));
  lp::for_each_mode(g, [&](int row, int col, int kx, int ky) {
    const long long k2 = static_cast<long long>(kx) * kx + static_cast<long long>(ky) * ky;
    if (k2 <= radius2) slave.at(row, col) = master.at(row, col);
  });
}

void nudge_low_modes(const lp::SpectralField& master, lp::SpectralField& slave, int cutoff,
                     double mu, double dt) {
  lp::require_same_grid(master.grid(), slave.grid(), "nudge_low_modes");
  lp::for_each_mode(master.grid(), [&](int row, int col, int kx, int ky) {
    const double r = std::sqrt(static_cast<double>(kx) * kx + static_cast<double>(ky) * ky);
    const double w = lp::low_pass_weight(cutoff, r);
    if (w == 0.0) return;
    const lp::Complex m = master.at(row, col);
    slave.at(row, col) = m + (slave.at(row, col) - m) * std::exp(-mu * dt * w);
  });
}

std::pair<nse::FlowState, nse::FlowState> initial_pair(const SyncConfig& cfg) {
  const lp::Grid grid(cfg.n, cfg.length);
  nse::FlowState master{cfg.master_start ? cfg.master_start->omega
                                         : nse::random_vorticity(grid, cfg.master_seed, cfg.initial),
                        cfg.master_start ? cfg.master_start->t : 0.0, cfg.nu};
  nse::FlowState slave{master.omega, master.t, cfg.nu};
  if (cfg.slave_perturbation > 0.0) {
    nse::NoiseSpec spec = cfg.initial;
    spec.l2_norm = cfg.slave_perturbation * lp::l2_norm(master.omega);
    slave.omega += nse::random_vorticity(grid, cfg.slave_seed, spec);
  } else {
    nse::NoiseSpec spec = cfg.initial;
    // An independent draw on the master's scale.
    if (cfg.master_start) spec.l2_norm = lp::l2_norm(master.omega);
    slave.omega = nse::random_vorticity(grid, cfg.slave_seed, spec);
  }
  return {std::move(master), std::move(slave)};
}

CCalCalibration calibrate_from_pilot(const SyncConfig& cfg, double pilot_duration, int records) {
  if (!(pilot_duration > 0.0)) throw ConfigError("pilot duration must be positive");
  if (records < 2) throw ConfigError("pilot needs at least 2 records");
  const lp::Grid grid(cfg.n, cfg.length);
  const nse::Forcing forcing = cfg.forcing ? *cfg.forcing : nse::Forcing::none(grid);
  auto [master, slave] = initial_pair(cfg);
  nse::Stepper sm(grid, cfg.nu, cfg.stepper);
  nse::Stepper ss(grid, cfg.nu, cfg.stepper);
  const double t0 = master.t;
  std::vector<FluxRecord> rec;
  rec.reserve(static_cast<std::size_t>(records));
  for (int i = 1; i <= records; ++i) {
    const double t = t0 + pilot_duration * i / records;
    sm.advance_to(master, forcing, t);
    ss.advance_to(slave, forcing, t);
    rec.push_back(flux_record(master, slave));
  }
  return calibrate_c_cal(rec, cfg.params);
}

namespace {

// Advances the slave on its own thread, one step per pair of barrier phases.
class SlaveWorker {
 public:
  SlaveWorker(nse::Stepper& stepper, nse::FlowState& state, const nse::Forcing& forcing)
      : stepper_(stepper), state_(state), forcing_(forcing), barrier_(2) {
    thread_ = std::jthread([this] { loop(); });
  }

  ~SlaveWorker() {
    stop_ = true;
    barrier_.arrive_and_wait();
  }

  SlaveWorker(const SlaveWorker&) = delete;
  SlaveWorker& operator=(const SlaveWorker&) = delete;

  void begin() { barrier_.arrive_and_wait(); }
  // Waits for the slave step and rethrows its failure, if any.
  void finish() {
    barrier_.arrive_and_wait();
    if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
  }

 private:
  void loop() {
    for (;;) {
      barrier_.arrive_and_wait();
      if (stop_) return;
      try {
        stepper_.advance(state_, forcing_);
      } catch (...) {
        error_ = std::current_exception();
      }
      barrier_.arrive_and_wait();
    }
  }

  nse::Stepper& stepper_;
  nse::FlowState& state_;
  const nse::Forcing& forcing_;
  std::barrier<> barrier_;
  std::atomic<bool> stop_{false};
  std::exception_ptr error_;
  std::jthread thread_;
};

SyncSample take_sample(const SyncConfig& cfg, const nse::FlowState& master, const nse::FlowState& slave) {
  const lp::SpectralField diff = slave.omega - master.omega;
  const diag::ShellProfile profile = diag::compute_shell_profile(master.omega, master.t);
  SyncSample s;
  s.t = master.t;
  s.diff_u = std::sqrt(nse::kinetic_energy_norm_squared(diff));
  s.diff_omega = lp::l2_norm(diff);
  s.low_diff = std::sqrt(nse::kinetic_energy_norm_squared(lp::project_low(diff, cfg.Q)));
  s.master_omega = lp::l2_norm(master.omega);
  s.flux = flux_monitor(master, slave, cfg.params, diag::determining_wavenumber(profile, cfg.params, cfg.nu),
                        cfg.record_bony);
  const int q_max = master.grid().q_max();
  s.diff_low_l2.resize(static_cast<std::size_t>(q_max + 2));
  for (int q = -1; q <= q_max; ++q) {
    s.diff_low_l2[static_cast<std::size_t>(q + 1)] = lp::l2_norm(lp::project_low(diff, q));
  }
  return s;
}

}  // namespace

DecayFit fit_decay(std::span<const SyncSample> samples) {
  DecayFit fit;
  if (samples.size() < 2) throw InsufficientDataError("decay fit needs at least two samples");
  double scale = 0.0;
  for (const auto& s : samples) scale = std::max(scale, s.master_omega);
  const double floor = kRoundoffFloor * scale;
  double end = samples.back().t;
  for (const auto& s : samples) {
    if (s.diff_omega <= floor) {
      fit.floor_reached = true;
      fit.floor_time = s.t;
      end = s.t;
      break;
    }
  }
  const double half = 0.5 * (samples.front().t + samples.back().t);
  auto collect = [&](double from) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : samples) {
      if (s.t >= from && s.t < end + (fit.floor_reached ? 0.0 : 1.0) && s.diff_omega > 0.0) {
        pts.emplace_back(s.t, std::log(s.diff_omega));
      }
    }
    return pts;
  };
  auto pts = collect(half);
  if (pts.size() < 3) pts = collect(samples.front().t);
  fit.points = static_cast<int>(pts.size());
  if (pts.size() < 2) return fit;

  const double m = static_cast<double>(pts.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  fit.rate = sxy / sxx;
  fit.intercept = my - fit.rate * mx;
  if (pts.size() > 2) {
    double ssr = 0.0;
    for (const auto& [x, y] : pts) {
      const double r = y - (fit.intercept + fit.rate * x);
      ssr += r * r;
    }
    fit.rate_stderr = std::sqrt(ssr / (m - 2.0) / sxx);
    fit.p_value = fit.rate_stderr > 0.0
                      ? 0.5 * std::erfc(std::abs(fit.rate) / fit.rate_stderr / std::sqrt(2.0))
                      : 0.0;
  }
  return fit;
}

Verdict classify(const DecayFit& fit, double t_run) {
  if (fit.floor_reached) return Verdict::synchronized;
  if (fit.points < 2 || std::abs(fit.rate) * t_run < std::log(10.0)) return Verdict::inconclusive;
  return fit.rate < 0.0 ? Verdict::synchronized : Verdict::not_synchronized;
}

void fill_groenwall_series(SyncRunResult& result) {
  auto& s = result.samples;
  const double nu = result.config.nu;
  const double delta = result.config.params.delta;
  const double bar = result.lambda_bar;
  const int q_bar = result.q_bar;
  for (auto& x : s) {
    const double lam = x.flux.lambda.value;
    const double power = std::pow(lam, 4.0 + 2.0 * delta);
    x.phi = bar > 0.0 ? nu / 8.0 * bar * bar * (2.0 - std::pow(lam / bar, 4.0 + 2.0 * delta)) : 0.0;
    const std::size_t slot = static_cast<std::size_t>(std::clamp(q_bar + 1, 0,
                                                                 static_cast<int>(x.diff_low_l2.size()) - 1));
    const double low = q_bar + 1 >= static_cast<int>(x.diff_low_l2.size()) ? x.diff_omega
                                                                            : x.diff_low_l2[slot];
    x.psi = nu / 8.0 * (4.0 * bar * bar + power) * low * low;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1;
    const std::size_t b = i + 1 == s.size() ? i : i + 1;
    if (a == b) {
      s[i].denstrophy_dt = 0.0;
      continue;
    }
    const double ea = s[a].diff_omega * s[a].diff_omega;
    const double eb = s[b].diff_omega * s[b].diff_omega;
    s[i].denstrophy_dt = (eb - ea) / (s[b].t - s[a].t);
  }
}

SyncRunResult run_sync(const SyncConfig& cfg) {
  cfg.validate();
  const auto wall_start = std::chrono::steady_clock::now();
  const lp::Grid grid(cfg.n, cfg.length);
  const nse::Forcing forcing = cfg.forcing ? *cfg.forcing : nse::Forcing::none(grid);
  auto [master, slave] = initial_pair(cfg);

  nse::Stepper master_stepper(grid, cfg.nu, cfg.stepper);
  nse::Stepper slave_stepper(grid, cfg.nu, cfg.stepper);
  auto couple = [&] {
    if (cfg.coupling == Coupling::replace) replace_low_modes(master.omega, slave.omega, cfg.Q);
    if (cfg.coupling == Coupling::nudge) {
      nudge_low_modes(master.omega, slave.omega, cfg.Q, cfg.mu, cfg.stepper.dt);
    }
  };
  if (cfg.coupling == Coupling::replace) couple();

  SyncRunResult result;
  result.config = cfg;
  const long long steps = std::llround(cfg.duration / cfg.stepper.dt);
  const long long every = std::max(1LL, std::llround(cfg.sample_interval / cfg.stepper.dt));
  result.samples.push_back(take_sample(cfg, master, slave));
  {
    SlaveWorker worker(slave_stepper, slave, forcing);
    for (long long step = 1; step <= steps; ++step) {
      worker.begin();
      std::exception_ptr master_error;
      try {
        master_stepper.advance(master, forcing);
      } catch (...) {
        master_error = std::current_exception();
      }
      worker.finish();
      if (master_error) std::rethrow_exception(master_error);
      couple();
      if (step % every == 0 || step == steps) result.samples.push_back(take_sample(cfg, master, slave));
    }
  }

  std::vector<diag::TimeSample> lambda_series;
  lambda_series.reserve(result.samples.size());
  for (const auto& s : result.samples) {
    lambda_series.push_back({s.t, s.flux.lambda.value});
    result.lambda_unresolved = result.lambda_unresolved || s.flux.lambda.unresolved;
    result.max_flux_ratio = std::max(result.max_flux_ratio, s.flux.ratio);
  }
  result.lambda_bar = diag::lambda_bar(lambda_series, cfg.lambda_window, cfg.transient_fraction);
  result.q_bar = diag::shell_at_or_above(result.lambda_bar, cfg.length);
  fill_groenwall_series(result);
  result.fit = fit_decay(result.samples);
  result.verdict = classify(result.fit, cfg.duration);
  result.master_final = std::move(master);
  result.slave_final = std::move(slave);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

}  // namespace detmodes::sync
