#include "detmodes/diag/time_average.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "detmodes/errors.hpp"

namespace detmodes::diag {

namespace {

double interpolate(const TimeSample& a, const TimeSample& b, double t) {
  if (b.t == a.t) return b.value;
  const double w = (t - a.t) / (b.t - a.t);
  return a.value + w * (b.value - a.value);
}

}  // namespace

double integrate_samples(std::span<const TimeSample> s, double a, double b) {
  if (s.size() < 2 || b < a) return 0.0;
  auto first = std::upper_bound(s.begin(), s.end(), a,
                                [](double t, const TimeSample& x) { return t < x.t; });
  std::size_t i0 = first == s.begin() ? 0 : static_cast<std::size_t>(first - s.begin()) - 1;
  double sum = 0.0;
  for (std::size_t i = i0; i + 1 < s.size() && s[i].t < b; ++i) {
    const double lo = std::max(a, s[i].t);
    const double hi = std::min(b, s[i + 1].t);
    if (hi <= lo) continue;
    sum += 0.5 * (hi - lo) * (interpolate(s[i], s[i + 1], lo) + interpolate(s[i], s[i + 1], hi));
  }
  return sum;
}

double time_mean(std::span<const TimeSample> s) {
  if (s.empty()) throw InsufficientDataError("time mean of an empty series");
  if (s.size() == 1 || s.back().t == s.front().t) return s.back().value;
  return integrate_samples(s, s.front().t, s.back().t) / (s.back().t - s.front().t);
}

TimeAverager::TimeAverager(double window, AverageMode mode, double transient_fraction)
    : window_(window), mode_(mode), transient_fraction_(transient_fraction) {
  if (!(window > 0.0) || !std::isfinite(window)) throw ConfigError("averaging window must be positive");
  if (!(transient_fraction >= 0.0 && transient_fraction < 1.0)) {
    throw ConfigError("transient fraction must lie in [0, 1)");
  }
}

void TimeAverager::add(double t, double value) {
  if (!samples_.empty() && !(t > samples_.back().t)) {
    throw std::invalid_argument("time samples must be strictly increasing");
  }
  samples_.push_back({t, value});
}

double TimeAverager::integrate(double a, double b) const { return integrate_samples(samples_, a, b); }

double TimeAverager::window_average(double t_end) const {
  // Relative slack so that windows built from accumulated step times still count as complete.
  const double slack = 1e-9 * window_;
  if (samples_.size() < 2 || t_end - window_ < samples_.front().t - slack ||
      t_end > samples_.back().t + slack) {
    std::ostringstream msg;
    msg << "window [" << t_end - window_ << ", " << t_end << "] not covered by samples";
    throw InsufficientDataError(msg.str());
  }
  const double a = std::max(t_end - window_, samples_.front().t);
  const double integral = integrate(a, std::min(t_end, samples_.back().t));
  return mode_ == AverageMode::mean ? integral / window_ : integral;
}

double TimeAverager::latest() const {
  if (samples_.empty()) throw InsufficientDataError("no samples");
  return window_average(samples_.back().t);
}

double TimeAverager::limsup() const {
  if (samples_.size() < 2) throw InsufficientDataError("limsup needs at least two samples");
  const double t0 = samples_.front().t;
  const double cut = t0 + transient_fraction_ * (samples_.back().t - t0);
  const double slack = 1e-9 * window_;
  bool any = false;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples_) {
    if (s.t - window_ < cut - slack) continue;
    best = std::max(best, window_average(s.t));
    any = true;
  }
  if (!any) {
    std::ostringstream msg;
    msg << "no complete window of length " << window_ << " after the transient cut t=" << cut;
    throw InsufficientDataError(msg.str());
  }
  return best;
}

double TimeAverager::running() const {
  if (samples_.empty()) throw InsufficientDataError("no samples");
  const double t1 = samples_.back().t;
  const double a = std::max(samples_.front().t, t1 - window_);
  if (t1 == a) return samples_.back().value;
  const double integral = integrate(a, t1);
  return mode_ == AverageMode::mean ? integral / (t1 - a) : integral;
}

}  // namespace detmodes::diag
