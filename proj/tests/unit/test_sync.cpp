#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "detmodes/errors.hpp"
#include "detmodes/lp/littlewood_paley.hpp"
#include "detmodes/lp/norms.hpp"
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
using namespace detmodes::sync;
using lp::Grid;
using lp::SpectralField;
namespace oracle = detmodes::testing;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SyncConfig small_config() {
  SyncConfig cfg;
  cfg.n = 32;
  cfg.nu = 0.05;
  cfg.forcing = nse::kolmogorov(Grid(32, kTwoPi), 0.2, 1);
  cfg.duration = 1.0;
  cfg.sample_interval = 0.1;
  cfg.stepper.dt = 0.01;
  cfg.lambda_window = 0.25;
  cfg.initial.l2_norm = 2.0;
  return cfg;
}

TEST(Flux, VanishesForIdenticalStates) {
  Grid g(32, kTwoPi);
  const nse::FlowState m{nse::random_vorticity(g, 3, nse::NoiseSpec{}), 0.0, 0.1};
  const FluxMonitorSample s = flux_monitor(m, m, diag::WavenumberParams{}, true);
  EXPECT_EQ(s.flux, 0.0);
  EXPECT_EQ(s.rhs, 0.0);
  EXPECT_EQ(s.ratio, 0.0);
  ASSERT_TRUE(s.bony.has_value());
  EXPECT_EQ(s.bony->total(), 0.0);
}

TEST(Flux, ToleratesRoundOffInheritedFromNearlyEqualStates) {
  // Two states carrying slightly different round-off on a self-conjugate line
  // give a difference whose own asymmetry is of the order of its size.
  Grid g(32, kTwoPi);
  const SpectralField base = nse::random_vorticity(g, 3, nse::NoiseSpec{});
  nse::FlowState m{base, 0.0, 0.1};
  nse::FlowState s{base, 0.0, 0.1};
  const int row = g.row_of_kx(2);
  m.omega.at(row, 0) += lp::Complex{1e-17, 0.0};
  s.omega.at(row, 0) += lp::Complex{0.0, 3e-17};
  ASSERT_NO_THROW(lp::require_hermitian(m.omega));
  EXPECT_THROW(lp::require_hermitian(s.omega - m.omega), SymmetryError);
  const FluxMonitorSample x = flux_monitor(m, s, diag::WavenumberParams{}, true);
  EXPECT_TRUE(std::isfinite(x.flux));
  EXPECT_LT(std::abs(x.bony->total() - x.flux), 1e-30);
}

TEST(Flux, MatchesConvolutionOnFewModes) {
  Grid g(32, kTwoPi);
  struct Case {
    std::vector<std::pair<int, int>> diff, master;
  };
  const std::vector<Case> cases{
      {{{1, 0}}, {{1, 1}}},
      {{{1, 0}, {0, 1}}, {{1, 1}}},
      {{{2, 1}, {-1, 3}}, {{1, -2}, {3, 1}}},
      {{{1, 2}}, {{2, 4}, {0, 3}}},
      {{{1, 0}, {1, 2}}, {{0, 2}}},
  };
  int seed = 1;
  double largest = 0.0;
  for (const auto& c : cases) {
    SpectralField diff(g), master(g);
    for (const auto& [kx, ky] : c.diff) diff.set_mode(kx, ky, {0.3 * seed, -0.7 + 0.1 * seed});
    for (const auto& [kx, ky] : c.master) master.set_mode(kx, ky, {-0.4, 0.2 * seed});
    ++seed;
    const double want = oracle::convolution_flux(diff, master);
    const double got = flux_term(master + diff, master);
    EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, std::abs(want)));
    largest = std::max(largest, std::abs(want));
  }
  // Some case must carry an active triad so the comparison is not vacuous.
  EXPECT_GT(largest, 1e-2);
}

TEST(Flux, BonySplitIsExact) {
  Grid g(64, kTwoPi);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SpectralField a = oracle::random_field(g, seed);
    const SpectralField b = oracle::random_field(g, seed + 100);
    const double i = flux_term(a, b);
    const BonySplit s = bony_split(a, b);
    EXPECT_NEAR(s.total(), i, 1e-10 * std::abs(i));
  }
}

TEST(Flux, BoundTermsAreNonNegative) {
  Grid g(64, kTwoPi);
  const nse::FlowState m{oracle::random_field(g, 7), 0.0, 0.02};
  const nse::FlowState s{oracle::random_field(g, 8), 0.0, 0.02};
  const FluxMonitorSample f = flux_monitor(m, s, diag::WavenumberParams{});
  EXPECT_GE(f.dissipation, 0.0);
  EXPECT_GE(f.low_mode_term, 0.0);
  EXPECT_GT(f.rhs, 0.0);
  EXPECT_TRUE(std::isfinite(f.ratio));
  const nse::FlowState later{s.omega, 1.0, 0.02};
  EXPECT_THROW(flux_monitor(m, later, diag::WavenumberParams{}), MismatchError);
}

TEST(Flux, EnstrophyDifferenceIdentity) {
  // Uncoupled pair: d/dt (1/2)||omega||^2 = -nu ||grad omega||^2 - I.
  Grid g(32, kTwoPi);
  const double nu = 0.05;
  const nse::Forcing f = nse::kolmogorov(g, 0.2, 1);
  nse::StepperConfig sc;
  sc.dt = 1e-3;
  nse::Stepper sa(g, nu, sc), sb(g, nu, sc);
  nse::FlowState a{nse::random_vorticity(g, 1, nse::NoiseSpec{}), 0.0, nu};
  nse::FlowState b{nse::random_vorticity(g, 2, nse::NoiseSpec{}), 0.0, nu};
  auto half_enstrophy = [&] { return 0.5 * lp::l2_norm_squared(b.omega - a.omega); };
  const double e0 = half_enstrophy();
  sa.advance(a, f);
  sb.advance(b, f);
  const nse::FlowState a_mid = a, b_mid = b;
  sa.advance(a, f);
  sb.advance(b, f);
  const double e2 = half_enstrophy();
  const double rate = (e2 - e0) / (2.0 * sc.dt);
  const SpectralField diff = b_mid.omega - a_mid.omega;
  const double rhs = -nu * lp::gradient_l2_squared(diff) - flux_term(b_mid.omega, a_mid.omega);
  EXPECT_NEAR(rate, rhs, 1e-5 * std::abs(rhs));
}

TEST(Coupling, ReplaceForcesLowModes) {
  Grid g(32, kTwoPi);
  SpectralField m = oracle::random_field(g, 1), s = oracle::random_field(g, 2);
  replace_low_modes(m, s, 1);
  const SpectralField low = lp::project_low(s - m, 1);
  EXPECT_EQ(oracle::max_abs(low), 0.0);
  EXPECT_EQ(s.coeff(4, 0), m.coeff(4, 0));   // |k| = 4 = 2^{Q+1} is replaced
  EXPECT_NE(s.coeff(4, 1), m.coeff(4, 1));   // |k| > 4 is not
}

TEST(Coupling, NudgeRelaxesLowModesOnly) {
  Grid g(32, kTwoPi);
  SpectralField m = oracle::random_field(g, 1), s = oracle::random_field(g, 2);
  const SpectralField before = s;
  nudge_low_modes(m, s, 1, 10.0, 0.1);
  const std::complex<double> gap0 = before.coeff(1, 0) - m.coeff(1, 0);
  EXPECT_NEAR(std::abs(s.coeff(1, 0) - m.coeff(1, 0)), std::abs(gap0) * std::exp(-1.0), 1e-14);
  EXPECT_EQ(s.coeff(8, 3), before.coeff(8, 3));
}

TEST(SyncRun, IdenticalInitialDataStayIdentical) {
  SyncConfig cfg = small_config();
  cfg.coupling = Coupling::none;
  cfg.slave_seed = cfg.master_seed;
  const SyncRunResult r = run_sync(cfg);
  for (const auto& s : r.samples) EXPECT_EQ(s.diff_omega, 0.0);
  EXPECT_EQ(r.verdict, Verdict::synchronized);
}

TEST(SyncRun, FullReplacementSynchronizesImmediately) {
  SyncConfig cfg = small_config();
  cfg.Q = Grid(cfg.n, cfg.length).q_max();
  const SyncRunResult r = run_sync(cfg);
  for (const auto& s : r.samples) EXPECT_EQ(s.diff_u, 0.0);
  EXPECT_EQ(r.verdict, Verdict::synchronized);
}

TEST(SyncRun, ReplaceModeHoldsLowModesEqual) {
  SyncConfig cfg = small_config();
  cfg.Q = 1;
  const SyncRunResult r = run_sync(cfg);
  ASSERT_EQ(r.samples.size(), 11u);
  for (const auto& s : r.samples) {
    EXPECT_EQ(s.low_diff, 0.0);
    EXPECT_GE(s.flux.rhs, 0.0);
  }
  EXPECT_GT(r.samples.front().diff_omega, 0.0);
}

TEST(SyncRun, ConfigValidation) {
  SyncConfig cfg = small_config();
  cfg.Q = -2;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.coupling = Coupling::nudge;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.mu = 5.0;
  EXPECT_NO_THROW(cfg.validate());
  cfg = small_config();
  cfg.forcing = nse::kolmogorov(Grid(64, kTwoPi), 0.2, 1);
  EXPECT_THROW(cfg.validate(), MismatchError);
  cfg = small_config();
  cfg.master_start = nse::FlowState{SpectralField(Grid(32, kTwoPi)), 0.0, 0.07};
  EXPECT_THROW(cfg.validate(), MismatchError);
  EXPECT_THROW(coupling_from_string("copy"), ConfigError);
}

TEST(SyncRun, NudgingShrinksTheDifference) {
  SyncConfig cfg = small_config();
  cfg.coupling = Coupling::nudge;
  cfg.mu = 20.0;
  cfg.Q = 2;
  const SyncRunResult r = run_sync(cfg);
  EXPECT_LT(r.samples.back().low_diff, 0.1 * r.samples.front().low_diff);
}

std::vector<SyncSample> series(double rate, double t_end, double start = 1.0) {
  std::vector<SyncSample> s;
  for (int i = 0; i <= 100; ++i) {
    SyncSample x;
    x.t = t_end * i / 100.0;
    x.diff_omega = start * std::exp(rate * x.t) * (1.0 + 0.01 * std::sin(7.0 * i));
    x.master_omega = 1.0;
    s.push_back(x);
  }
  return s;
}

TEST(Verdict, FitAndClassify) {
  const auto decay = series(-1.0, 10.0);
  const DecayFit f = fit_decay(decay);
  EXPECT_NEAR(f.rate, -1.0, 0.01);
  EXPECT_LT(f.p_value, 1e-6);
  EXPECT_EQ(classify(f, 10.0), Verdict::synchronized);

  EXPECT_EQ(classify(fit_decay(series(0.5, 10.0)), 10.0), Verdict::not_synchronized);
  EXPECT_EQ(classify(fit_decay(series(0.05, 10.0)), 10.0), Verdict::inconclusive);

  auto floored = series(-1.0, 10.0);
  for (auto& x : floored) {
    if (x.t > 4.0) x.diff_omega = 0.0;
  }
  const DecayFit ff = fit_decay(floored);
  EXPECT_TRUE(ff.floor_reached);
  EXPECT_EQ(classify(ff, 10.0), Verdict::synchronized);
}

TEST(CriticalQ, SummaryDetectsTransitionAndMonotonicity) {
  auto row = [](int q, Verdict v) {
    CriticalQRow r;
    r.Q = q;
    r.verdict = v;
    r.lambda_bar = 8.0 / kTwoPi;
    return r;
  };
  using V = Verdict;
  const auto t = summarize_critical_q({row(2, V::synchronized), row(0, V::not_synchronized),
                                       row(1, V::not_synchronized), row(3, V::synchronized)},
                                      kTwoPi);
  EXPECT_TRUE(t.monotone);
  EXPECT_EQ(t.transitions, 1);
  EXPECT_EQ(t.q_star, 2);
  EXPECT_EQ(t.q_theorem, 3);

  const auto bad = summarize_critical_q({row(0, V::synchronized), row(1, V::not_synchronized),
                                         row(2, V::synchronized)},
                                        kTwoPi);
  EXPECT_FALSE(bad.monotone);
  EXPECT_EQ(bad.transitions, 2);

  const auto flagged = summarize_critical_q({row(0, V::not_synchronized), row(1, V::inconclusive),
                                             row(2, V::synchronized)},
                                            kTwoPi);
  EXPECT_EQ(flagged.inconclusive, 1);
  EXPECT_TRUE(flagged.monotone);
  EXPECT_THROW(find_critical_q(small_config(), std::vector<int>{1}), std::invalid_argument);
}

TEST(CriticalQ, TopCutoffAlwaysSynchronizes) {
  SyncConfig cfg = small_config();
  const int top = Grid(cfg.n, cfg.length).q_max();
  const std::vector<int> qs{top - 1, top};
  const CriticalQTable t = find_critical_q(cfg, qs);
  EXPECT_EQ(t.rows.back().verdict, Verdict::synchronized);
}

TEST(Groenwall, SynchronizedRunHoldsTrivially) {
  SyncConfig cfg = small_config();
  cfg.Q = Grid(cfg.n, cfg.length).q_max();
  const SyncRunResult r = run_sync(cfg);
  const GroenwallReport g = groenwall_monitor(r, 0.25);
  EXPECT_EQ(g.psi_max, 0.0);
  EXPECT_EQ(g.hold_fraction, 1.0);
  EXPECT_EQ(g.slack, 1.0);
  EXPECT_TRUE(g.psi_vanishing);
}

TEST(Groenwall, PsiVanishesWhenCutoffCoversLambdaBar) {
  SyncConfig cfg = small_config();
  SyncRunResult r = run_sync(cfg);
  // Re-run with a cutoff at or above the shell of the master's Lambda-bar.
  cfg.Q = std::max(r.q_bar, 0);
  r = run_sync(cfg);
  ASSERT_GE(cfg.Q, r.q_bar);
  for (const auto& s : r.samples) EXPECT_EQ(s.psi, 0.0);
  EXPECT_THROW(groenwall_monitor(r, 10.0), InsufficientDataError);
}

TEST(Calibration, LadderStopsAtTheLastPassingRung) {
  Grid g(32, kTwoPi);
  const double nu = 0.02;
  std::vector<FluxRecord> recs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const nse::FlowState m{nse::random_vorticity(g, seed, nse::NoiseSpec{}), 0.0, nu};
    const nse::FlowState s{nse::random_vorticity(g, seed + 50, nse::NoiseSpec{}), 0.0, nu};
    recs.push_back(flux_record(m, s));
  }
  const CCalCalibration c = calibrate_c_cal(recs, diag::WavenumberParams{}, 0.01, 30, 1.0);
  EXPECT_GE(c.hold_fraction, 1.0);
  EXPECT_NEAR(c.c0, diag::WavenumberParams::default_c0(0.5, c.c_cal), 1e-15);
  if (!c.capped) {
    // The next rung fails for at least one record.
    const CCalCalibration next = calibrate_c_cal(recs, diag::WavenumberParams{}, 2.0 * c.c_cal, 0, 1.0);
    EXPECT_LT(next.hold_fraction, 1.0);
  }
  EXPECT_THROW(calibrate_c_cal({}, diag::WavenumberParams{}), InsufficientDataError);
}

}  // namespace
