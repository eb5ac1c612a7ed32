#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "detmodes/diag/monitor.hpp"
#include "detmodes/diag/wavenumber.hpp"
#include "detmodes/nse/stepper.hpp"

namespace detmodes::diag {

/// A sweep over Kolmogorov forcing amplitudes at fixed nu and L.
struct ScalingStudyConfig {
  int n = 128;
  double length = 6.283185307179586;
  double nu = 0.01;
  std::vector<double> amplitudes;
  int forcing_shell = 2;
  std::uint64_t seed = 1;
  double initial_fraction = 0.05;  // initial ||omega||_2 over nu kappa0 G
  double spinup = 0.0;             // unmonitored time before sampling starts
  double duration = 10.0;          // monitored time
  double sample_interval = 0.1;
  nse::StepperConfig stepper;
  WavenumberParams params;
  double window = 1.0;
  double transient_fraction = 0.5;
  double bernstein_constant = 0.0;
};

struct ScalingRow {
  double amplitude = 0.0;
  double grashof = 0.0;
  double d = 0.0;
  double eta = 0.0;
  double kappa_eta = 0.0;
  double kraichnan_bound = 0.0;  // 2^{1/4} kappa0 G^{2/(d+4)}
  double lambda_bar = 0.0;
  double avg_palinstrophy = 0.0;
  bool lambda_unresolved = false;
  bool stationary = false;
};

/// Least-squares slope of log lambda_bar against log G over rows with G > 0.
struct ScalingFit {
  double exponent = 0.0;
  double exponent_stderr = 0.0;
  double intercept = 0.0;
  double mean_d = 0.0;
  double predicted = 0.0;  // 2 / (mean_d + 4)
  int points = 0;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  ScalingFit fit;
};

/// Throws InsufficientDataError with fewer than two rows of positive G.
ScalingFit fit_scaling(std::span<const ScalingRow> rows);

using ScalingSink = std::function<void(std::size_t run, const DiagnosticsRecord&)>;

/// One monitored run at the given amplitude.
ScalingRow scaling_run(const ScalingStudyConfig& cfg, double amplitude, const RecordSink& sink = {});

ScalingTable scaling_study(const ScalingStudyConfig& cfg, const ScalingSink& sink = {});

}  // namespace detmodes::diag
