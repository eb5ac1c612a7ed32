#include "detmodes/diag/intermittency.hpp"

#include <cmath>

#include "detmodes/diag/time_average.hpp"
#include "detmodes/errors.hpp"

namespace detmodes::diag {

SaturationSums saturation_sums(std::span<const ShellProfile> history) {
  if (history.empty()) throw InsufficientDataError("intermittency dimension needs at least one sample");
  SaturationSums sums;
  sums.length = history.front().length;
  const std::size_t shells = history.front().velocity_l2.size();
  sums.linf_weight.resize(shells);
  sums.l2_weight.resize(shells);
  std::vector<TimeSample> a(history.size()), b(history.size());
  for (std::size_t q = 0; q < shells; ++q) {
    for (std::size_t i = 0; i < history.size(); ++i) {
      const ShellProfile& p = history[i];
      if (p.velocity_l2.size() != shells || p.length != sums.length) {
        throw MismatchError("shell profiles in one history must share a grid");
      }
      a[i] = {p.t, p.velocity_linf[q] * p.velocity_linf[q]};
      b[i] = {p.t, p.velocity_l2[q] * p.velocity_l2[q]};
    }
    sums.linf_weight[q] = time_mean(a);
    sums.l2_weight[q] = time_mean(b);
  }
  return sums;
}

namespace {

struct Sides {
  double numerator;
  double denominator;
};

Sides sides(const SaturationSums& sums, double cb, double s) {
  const double length = sums.length;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < sums.l2_weight.size(); ++i) {
    const int q = static_cast<int>(i) - 1;
    const double lambda = std::ldexp(1.0, q) / length;
    num += std::pow(lambda, 2.0 + s) * sums.linf_weight[i];
    den += std::pow(lambda, 4.0) * sums.l2_weight[i];
  }
  return {num, std::pow(cb, 2.0 - s) * std::pow(length, -s) * den};
}

}  // namespace

double saturation_ratio(const SaturationSums& sums, double bernstein_constant, double s) {
  const Sides lr = sides(sums, bernstein_constant, s);
  return lr.numerator / lr.denominator;
}

double intermittency_dimension(std::span<const ShellProfile> history, double bernstein_constant) {
  if (!(bernstein_constant > 0.0)) throw std::invalid_argument("Bernstein constant must be positive");
  const SaturationSums sums = saturation_sums(history);
  bool silent = true;
  for (std::size_t i = 0; i < sums.l2_weight.size(); ++i) {
    if (sums.l2_weight[i] != 0.0 || sums.linf_weight[i] != 0.0) silent = false;
  }
  if (silent) return 2.0;
  constexpr int kSteps = 200;
  for (int i = kSteps; i >= 0; --i) {
    const double s = i * kDimensionStep;
    const Sides lr = sides(sums, bernstein_constant, s);
    if (lr.numerator > 0.0 && lr.numerator <= lr.denominator) return s;
  }
  return 0.0;
}

}  // namespace detmodes::diag
