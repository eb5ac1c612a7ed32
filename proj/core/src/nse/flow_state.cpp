#include "detmodes/nse/flow_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detmodes/errors.hpp"

namespace detmodes::nse {

void require_mean_zero(const lp::SpectralField& f, const char* what) {
  double scale = 0.0;
  for (const auto& c : f.data()) scale = std::max(scale, std::abs(c));
  const double mean = std::abs(f.at(0, 0));
  if (mean > 1e-14 * scale && mean > 0.0) {
    std::ostringstream msg;
    msg << what << " must have zero mean, got coeff(0) = " << f.at(0, 0);
    throw MeanError(msg.str());
  }
}

double kinetic_energy_norm_squared(const lp::SpectralField& omega) {
  const lp::Grid& g = omega.grid();
  const double k0 = g.kappa0();
  double sum = 0.0;
  lp::for_each_mode(g, [&](int row, int col, int kx, int ky) {
    if (kx == 0 && ky == 0) return;
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
    sum += lp::hermitian_weight(g, col) * std::norm(omega.at(row, col)) / k2;
  });
  return g.length() * g.length() * sum / (k0 * k0);
}

}  // namespace detmodes::nse
