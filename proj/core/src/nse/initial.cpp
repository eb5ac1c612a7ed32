#include "detmodes/nse/initial.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "detmodes/lp/norms.hpp"

namespace detmodes::nse {

lp::SpectralField taylor_green(const lp::Grid& grid, double amplitude) {
  // 2 sin x sin y = (cos(x - y) - cos(x + y)) / 2
  lp::SpectralField w(grid);
  w.set_mode(1, -1, {0.5 * amplitude, 0.0});
  w.set_mode(1, 1, {-0.5 * amplitude, 0.0});
  return w;
}

lp::SpectralField random_vorticity(const lp::Grid& grid, std::uint64_t seed, const NoiseSpec& spec) {
  if (!(spec.k_lo >= 0.0 && spec.k_hi >= spec.k_lo)) {
    throw std::invalid_argument("noise band must satisfy 0 <= k_lo <= k_hi");
  }
  std::mt19937_64 rng(seed);
  lp::SpectralField w(grid);
  lp::for_each_mode(grid, [&](int, int col, int kx, int ky) {
    // Draw for every stored mode so that the stream does not depend on the band.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (col == 0 && kx <= 0) return;
    if (!grid.dealiased(kx, ky) || kx == -grid.n() / 2 || ky == grid.n() / 2) return;
    const double r = std::sqrt(static_cast<double>(kx) * kx + static_cast<double>(ky) * ky);
    if (r < spec.k_lo || r > spec.k_hi) return;
    w.set_mode(kx, ky, std::polar(std::pow(r, spec.slope), 2.0 * std::numbers::pi * u));
  });
  const double norm = lp::l2_norm(w);
  if (norm > 0.0) w *= spec.l2_norm / norm;
  return w;
}

}  // namespace detmodes::nse
