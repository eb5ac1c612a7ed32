#include <benchmark/benchmark.h>

#include "detmodes/diag/shell_profile.hpp"
#include "detmodes/diag/wavenumber.hpp"
#include "detmodes/lp/fourier.hpp"
#include "detmodes/lp/littlewood_paley.hpp"
#include "detmodes/nse/biot_savart.hpp"
#include "detmodes/nse/forcing.hpp"
#include "detmodes/nse/initial.hpp"
#include "detmodes/nse/stepper.hpp"
#include "detmodes/sync/flux_monitor.hpp"

namespace {

using namespace detmodes;

constexpr double kLength = 6.283185307179586;

lp::SpectralField sample_vorticity(const lp::Grid& g, std::uint64_t seed = 3) {
  nse::NoiseSpec spec;
  spec.k_hi = g.n() / 4.0;
  return nse::random_vorticity(g, seed, spec);
}

void BM_Transform(benchmark::State& state) {
  const lp::Grid g(static_cast<int>(state.range(0)), kLength);
  const auto w = sample_vorticity(g);
  for (auto _ : state) {
    auto phys = lp::transform_to_physical(w);
    benchmark::DoNotOptimize(lp::transform_to_spectral(phys));
  }
}
BENCHMARK(BM_Transform)->Arg(64)->Arg(128)->Arg(256);

void BM_NonlinearTerm(benchmark::State& state) {
  const lp::Grid g(static_cast<int>(state.range(0)), kLength);
  const auto w = sample_vorticity(g);
  nse::AdvectionWorkspace ws(g);
  lp::SpectralField out(g);
  for (auto _ : state) benchmark::DoNotOptimize(ws.evaluate(w, out));
}
BENCHMARK(BM_NonlinearTerm)->Arg(64)->Arg(128)->Arg(256);

void BM_Step(benchmark::State& state) {
  const lp::Grid g(static_cast<int>(state.range(0)), kLength);
  nse::StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.scheme = state.range(1) == 0 ? nse::Scheme::etdrk4 : nse::Scheme::cnab2;
  nse::Stepper stepper(g, 0.01, cfg);
  const auto forcing = nse::kolmogorov(g, 1.0, 2);
  nse::FlowState s{sample_vorticity(g), 0.0, 0.01};
  for (auto _ : state) stepper.advance(s, forcing);
}
BENCHMARK(BM_Step)->Args({128, 0})->Args({128, 1})->Args({256, 0})->Args({256, 1});

void BM_ShellDecomposition(benchmark::State& state) {
  const lp::Grid g(static_cast<int>(state.range(0)), kLength);
  const auto w = sample_vorticity(g);
  for (auto _ : state) benchmark::DoNotOptimize(lp::decompose(w));
}
BENCHMARK(BM_ShellDecomposition)->Arg(128)->Arg(256);

void BM_ShellProfileAndWavenumber(benchmark::State& state) {
  const lp::Grid g(static_cast<int>(state.range(0)), kLength);
  const auto w = sample_vorticity(g);
  const diag::WavenumberParams params;
  for (auto _ : state) {
    const auto p = diag::compute_shell_profile(w);
    benchmark::DoNotOptimize(diag::determining_wavenumber(p, params, 0.01));
  }
}
BENCHMARK(BM_ShellProfileAndWavenumber)->Arg(128)->Arg(256);

void BM_FluxMonitor(benchmark::State& state) {
  const lp::Grid g(static_cast<int>(state.range(0)), kLength);
  const nse::FlowState master{sample_vorticity(g, 3), 0.0, 0.01};
  const nse::FlowState slave{sample_vorticity(g, 4), 0.0, 0.01};
  const diag::WavenumberParams params;
  const bool bony = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(sync::flux_monitor(master, slave, params, bony));
}
BENCHMARK(BM_FluxMonitor)->Args({128, 0})->Args({128, 1});

}  // namespace

BENCHMARK_MAIN();
