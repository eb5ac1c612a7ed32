#pragma once

#include <span>
#include <vector>

namespace detmodes::diag {

struct TimeSample {
  double t = 0.0;
  double value = 0.0;
};

enum class AverageMode { integral, mean };

/// Sliding-window time averages of a sampled scalar.
///
/// A window is [t_i - T, t_i] for a sample time t_i; the integrand is the
/// piecewise-linear interpolant of the samples (trapezoid rule). Only
/// windows lying entirely inside the recorded span count. The limsup is the
/// maximum over all complete windows that start at or after the transient
/// cut t_0 + transient_fraction * (t_last - t_0).
class TimeAverager {
 public:
  TimeAverager(double window, AverageMode mode = AverageMode::mean, double transient_fraction = 0.5);

  void add(double t, double value);
  void clear() noexcept { samples_.clear(); }

  double window() const noexcept { return window_; }
  AverageMode mode() const noexcept { return mode_; }
  double transient_fraction() const noexcept { return transient_fraction_; }
  std::span<const TimeSample> samples() const noexcept { return samples_; }

  /// Integral (or mean) over [t_end - T, t_end]. Throws InsufficientDataError
  /// if that window is not covered by the samples.
  double window_average(double t_end) const;

  /// Average over the last complete window.
  double latest() const;

  /// Max over complete trailing windows past the transient.
  double limsup() const;

  /// Average over the trailing min(T, elapsed) span; finite once two samples exist.
  double running() const;

 private:
  double integrate(double a, double b) const;

  double window_;
  AverageMode mode_;
  double transient_fraction_;
  std::vector<TimeSample> samples_;
};

/// Integral of the piecewise-linear interpolant over [a, b] (a, b inside the sample span).
double integrate_samples(std::span<const TimeSample> samples, double a, double b);

/// (1/(t_n - t_0)) int f dt by trapezoid; a single sample returns its value.
double time_mean(std::span<const TimeSample> samples);

}  // namespace detmodes::diag
