#include "detmodes/lp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "detmodes/lp/fourier.hpp"
#include "detmodes/lp/littlewood_paley.hpp"

namespace detmodes::lp {

double l2_norm_squared(const SpectralField& f) {
  const Grid& g = f.grid();
  const int cols = g.columns();
  auto c = f.data();
  double sum = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    for (int col = 0; col < cols; ++col) {
      sum += hermitian_weight(g, col) * std::norm(c[g.index(row, col)]);
    }
  }
  return g.length() * g.length() * sum;
}

double l2_norm(const SpectralField& f) { return std::sqrt(l2_norm_squared(f)); }

double inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid(), g.grid(), "inner");
  const Grid& gr = f.grid();
  const int cols = gr.columns();
  auto a = f.data();
  auto b = g.data();
  double sum = 0.0;
  for (int row = 0; row < gr.n(); ++row) {
    for (int col = 0; col < cols; ++col) {
      const std::size_t i = gr.index(row, col);
      sum += hermitian_weight(gr, col) * (a[i] * std::conj(b[i])).real();
    }
  }
  return gr.length() * gr.length() * sum;
}

double gradient_l2_squared(const SpectralField& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for_each_mode(g, [&](int row, int col, int kx, int ky) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
    sum += hermitian_weight(g, col) * k2 * std::norm(f.at(row, col));
  });
  const double k0 = g.kappa0();
  return g.length() * g.length() * k0 * k0 * sum;
}

double linf_norm(const PhysicalField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double linf_norm(const SpectralField& f) { return linf_norm(transform_to_physical(f)); }

double quadrature_l2_norm(const PhysicalField& f) {
  double sum = 0.0;
  for (double v : f.values) sum += v * v;
  return std::sqrt(f.grid.cell_area() * sum);
}

double lp_norm(const SpectralField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Lebesgue exponent must be >= 1");
  if (p == 2.0) return l2_norm(f);
  if (std::isinf(p)) return linf_norm(f);
  const PhysicalField phys = transform_to_physical(f);
  double sum = 0.0;
  for (double v : phys.values) sum += std::pow(std::abs(v), p);
  return std::pow(f.grid().cell_area() * sum, 1.0 / p);
}

std::vector<double> besov_shell_norms(const SpectralField& f, double p) {
  if (!(p == 2.0 || (std::isinf(p) && p > 0))) {
    throw std::invalid_argument("besov_shell_norms supports p = 2 or p = infinity, got " +
                                std::to_string(p));
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(f.grid().q_max() + 2));
  for (int q = -1; q <= f.grid().q_max(); ++q) {
    const SpectralField band = project_shell(f, q);
    out.push_back(p == 2.0 ? l2_norm(band) : linf_norm(band));
  }
  return out;
}

double bernstein_ratio(const SpectralField& f, int q, double r, double s) {
  if (!(s >= 1.0 && r >= s)) {
    throw std::invalid_argument("bernstein_ratio requires 1 <= s <= r");
  }
  const SpectralField band = project_shell(f, q);
  const double ns = lp_norm(band, s);
  if (ns == 0.0) {
    throw std::domain_error("bernstein_ratio undefined: band " + std::to_string(q) + " is zero");
  }
  const double nr = lp_norm(band, r);
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  const double exponent = 2.0 * (1.0 / s - inv_r);
  return nr / (std::pow(f.grid().shell_wavenumber(q), exponent) * ns);
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SpectralField random_localized_band(const Grid& grid, int q, int sources, std::uint64_t seed) {
  if (sources < 1) throw std::invalid_argument("at least one source required");
  std::mt19937_64 rng(seed);
  std::vector<double> xs, ys, ws;
  for (int j = 0; j < sources; ++j) {
    xs.push_back(static_cast<double>(rng() % static_cast<std::uint64_t>(grid.n())) * grid.spacing());
    ys.push_back(static_cast<double>(rng() % static_cast<std::uint64_t>(grid.n())) * grid.spacing());
    ws.push_back(0.25 + 0.75 * unit_uniform(rng));
  }
  const auto basis = shell_basis(grid);
  const auto& weights = basis->shell(q);
  const double k0 = grid.kappa0();
  SpectralField f(grid);
  for_each_mode(grid, [&](int row, int col, int kx, int ky) {
    const double w = weights[grid.index(row, col)];
    if (w == 0.0) return;
    Complex c{0.0, 0.0};
    for (int j = 0; j < sources; ++j) {
      c += ws[j] * std::polar(1.0, -k0 * (kx * xs[j] + ky * ys[j]));
    }
    f.at(row, col) = w * c;
  });
  // The Nyquist lines lie outside every resolved shell, so no symmetrization is needed.
  return f;
}

SpectralField bernstein_extremizer(const Grid& grid, int q) {
  const auto basis = shell_basis(grid);
  const auto& weights = basis->shell(q);
  SpectralField f(grid);
  for (std::size_t i = 0; i < weights.size(); ++i) f.data()[i] = Complex{weights[i], 0.0};
  return f;
}

BernsteinCalibration calibrate_bernstein(const Grid& grid, int samples, std::uint64_t seed,
                                         int q_lo, int q_hi) {
  if (samples < 1) throw std::invalid_argument("calibration needs at least one sample per shell");
  BernsteinCalibration cal;
  cal.n = grid.n();
  cal.length = grid.length();
  cal.samples_per_shell = samples;
  cal.seed = seed;
  cal.q_lo = std::max(q_lo, 0);
  cal.q_hi = std::min(q_hi, grid.q_max());
  if (cal.q_hi < cal.q_lo) throw std::invalid_argument("empty calibration shell range");
  std::mt19937_64 seeder(seed);
  for (int q = cal.q_lo; q <= cal.q_hi; ++q) {
    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
      const int sources = 1 + static_cast<int>(seeder() % 4);
      const SpectralField f = random_localized_band(grid, q, sources, seeder());
      best = std::max(best, bernstein_ratio(f, q, kInfinity, 2.0));
    }
    cal.shell_max.push_back(best);
  }
  cal.extremizer_ratio = bernstein_ratio(bernstein_extremizer(grid, cal.q_hi), cal.q_hi, kInfinity, 2.0);
  cal.c_b = std::max(cal.extremizer_ratio,
                     *std::max_element(cal.shell_max.begin(), cal.shell_max.end()));
  return cal;
}

}  // namespace detmodes::lp
