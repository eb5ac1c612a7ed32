#include "detmodes/lp/littlewood_paley.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace detmodes::lp {

double smooth_step(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  // e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}) = 1 / (1 + e^{1/t - 1/(1-t)})
  return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
}

double chi(double radius) noexcept { return smooth_step(4.0 * (1.0 - radius)); }

double phi(double radius) noexcept { return chi(0.5 * radius) - chi(radius); }

double shell_weight(int q, double radius) noexcept {
  if (q < 0) return chi(radius);
  return chi(std::ldexp(radius, -q - 1)) - chi(std::ldexp(radius, -q));
}

double low_pass_weight(int cutoff, double radius) noexcept {
  return chi(std::ldexp(radius, -cutoff - 1));
}

ShellBasis::ShellBasis(const Grid& grid) : grid_(grid) {
  const int count = grid.q_max() + 2;
  shells_.assign(count, std::vector<double>(grid.spectral_size(), 0.0));
  lows_.assign(count, std::vector<double>(grid.spectral_size(), 0.0));
  for_each_mode(grid, [&](int row, int col, int kx, int ky) {
    const double radius = std::sqrt(static_cast<double>(kx) * kx + static_cast<double>(ky) * ky);
    const std::size_t idx = grid.index(row, col);
    for (int q = -1; q <= grid.q_max(); ++q) {
      shells_[q + 1][idx] = shell_weight(q, radius);
      lows_[q + 1][idx] = low_pass_weight(q, radius);
    }
  });
}

const std::vector<double>& ShellBasis::shell(int q) const {
  if (q < -1 || q > grid_.q_max()) {
    throw std::out_of_range("shell index " + std::to_string(q) + " outside [-1, " +
                            std::to_string(grid_.q_max()) + "]");
  }
  return shells_[static_cast<std::size_t>(q + 1)];
}

const std::vector<double>& ShellBasis::low(int cutoff) const {
  if (cutoff < -1 || cutoff > grid_.q_max()) {
    throw std::out_of_range("cutoff shell " + std::to_string(cutoff) + " outside [-1, " +
                            std::to_string(grid_.q_max()) + "]");
  }
  return lows_[static_cast<std::size_t>(cutoff + 1)];
}

bool ShellBasis::resolved(int kx, int ky) const noexcept {
  // |k| <= (3/4) 2^{q_max+1}  <=>  16 |k|^2 <= 9 * 4^{q_max+1}
  const long long k2 = static_cast<long long>(kx) * kx + static_cast<long long>(ky) * ky;
  const long long edge = 1LL << (2 * (grid_.q_max() + 1));
  return 16 * k2 <= 9 * edge;
}

std::shared_ptr<const ShellBasis> shell_basis(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::shared_ptr<const ShellBasis>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(grid.n(), grid.length());
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_shared<const ShellBasis>(grid)).first;
  }
  return it->second;
}

namespace {

SpectralField apply_multiplier(const SpectralField& f, const std::vector<double>& weights) {
  SpectralField out(f.grid());
  auto src = f.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i] * weights[i];
  return out;
}

}  // namespace

SpectralField ShellDecomposition::sum() const {
  if (bands.empty()) throw std::logic_error("empty shell decomposition");
  SpectralField total = bands.front();
  for (std::size_t i = 1; i < bands.size(); ++i) total += bands[i];
  return total;
}

SpectralField project_shell(const SpectralField& f, int q) {
  return apply_multiplier(f, shell_basis(f.grid())->shell(q));
}

SpectralField project_low(const SpectralField& f, int cutoff) {
  if (cutoff < -1) {
    throw std::out_of_range("low projection cutoff must be >= -1, got " + std::to_string(cutoff));
  }
  const Grid& g = f.grid();
  if (cutoff <= g.q_max()) {
    return apply_multiplier(f, shell_basis(g)->low(cutoff));
  }
  SpectralField out(g);
  for_each_mode(g, [&](int row, int col, int kx, int ky) {
    const double radius = std::sqrt(static_cast<double>(kx) * kx + static_cast<double>(ky) * ky);
    out.at(row, col) = f.at(row, col) * low_pass_weight(cutoff, radius);
  });
  return out;
}

SpectralField project_band(const SpectralField& f, int lower_exclusive, int upper_inclusive) {
  if (upper_inclusive <= lower_exclusive) return SpectralField(f.grid());
  if (lower_exclusive < -1) return project_low(f, upper_inclusive);
  return project_low(f, upper_inclusive) - project_low(f, lower_exclusive);
}

SpectralField project_neighbourhood(const SpectralField& f, int q) {
  const int lo = std::max(q - 1, -1);
  const int hi = std::min(q + 1, f.grid().q_max());
  SpectralField out(f.grid());
  for (int p = lo; p <= hi; ++p) out += project_shell(f, p);
  return out;
}

ShellDecomposition decompose(const SpectralField& f) {
  ShellDecomposition d;
  d.q_min = -1;
  d.q_max = f.grid().q_max();
  d.bands.reserve(static_cast<std::size_t>(d.q_max + 2));
  for (int q = -1; q <= d.q_max; ++q) d.bands.push_back(project_shell(f, q));
  return d;
}

}  // namespace detmodes::lp
