#include "detmodes/nse/biot_savart.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "detmodes/lp/fourier.hpp"
#include "detmodes/nse/flow_state.hpp"

namespace detmodes::nse {

namespace {

constexpr lp::Complex kI{0.0, 1.0};

bool nyquist(const lp::Grid& g, int kx, int ky) { return kx == -g.n() / 2 || ky == g.n() / 2; }

}  // namespace

Velocity velocity_from_vorticity(const lp::SpectralField& omega) {
  require_mean_zero(omega, "vorticity");
  const lp::Grid& g = omega.grid();
  const double k0 = g.kappa0();
  Velocity vel{lp::SpectralField(g), lp::SpectralField(g)};
  lp::for_each_mode(g, [&](int row, int col, int kx, int ky) {
    if ((kx == 0 && ky == 0) || nyquist(g, kx, ky)) return;
    const double k2 = k0 * k0 * (static_cast<double>(kx) * kx + static_cast<double>(ky) * ky);
    const lp::Complex psi = omega.at(row, col) / k2;
    vel.u.at(row, col) = kI * (k0 * ky) * psi;
    vel.v.at(row, col) = -kI * (k0 * kx) * psi;
  });
  return vel;
}

const std::vector<unsigned char>& dealias_mask(const lp::Grid& grid) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<std::vector<unsigned char>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[grid.n()];
  if (!slot) {
    slot = std::make_unique<std::vector<unsigned char>>(grid.spectral_size(), 0);
    lp::for_each_mode(grid, [&](int row, int col, int kx, int ky) {
      (*slot)[grid.index(row, col)] = (grid.dealiased(kx, ky) && !nyquist(grid, kx, ky)) ? 1 : 0;
    });
  }
  return *slot;
}

void dealias(lp::SpectralField& f) {
  const auto& mask = dealias_mask(f.grid());
  auto c = f.data();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!mask[i]) c[i] = 0.0;
  }
}

lp::SpectralField nonlinear_term(const lp::SpectralField& omega) {
  require_mean_zero(omega, "vorticity");
  AdvectionWorkspace ws(omega.grid());
  lp::SpectralField out(omega.grid());
  ws.evaluate(omega, out);
  return out;
}

AdvectionWorkspace::AdvectionWorkspace(const lp::Grid& grid)
    : grid_(grid),
      spec_a_(grid.spectral_size()),
      spec_b_(grid.spectral_size()),
      spec_c_(grid.spectral_size()),
      spec_d_(grid.spectral_size()),
      spec_scratch_(grid.spectral_size()),
      u_(grid.physical_size()),
      v_(grid.physical_size()),
      wx_(grid.physical_size()),
      wy_(grid.physical_size()),
      prod_(grid.physical_size()),
      real_scratch_(grid.physical_size()) {}

void AdvectionWorkspace::evaluate_pair(const lp::SpectralField& transport,
                                       const lp::SpectralField& advected, lp::SpectralField& out) {
  product(transport, advected, out, true);
}

double AdvectionWorkspace::evaluate(const lp::SpectralField& omega, lp::SpectralField& out,
                                    bool dealias_output) {
  return product(omega, omega, out, dealias_output);
}

double AdvectionWorkspace::product(const lp::SpectralField& transport,
                                   const lp::SpectralField& advected, lp::SpectralField& out,
                                   bool dealias_output) {
  lp::require_same_grid(transport.grid(), grid_, "advection transport");
  lp::require_same_grid(advected.grid(), grid_, "advection operand");
  lp::require_same_grid(out.grid(), grid_, "advection output");
  const lp::Grid& g = grid_;
  const double k0 = g.kappa0();
  lp::for_each_mode(g, [&](int row, int col, int kx, int ky) {
    const std::size_t i = g.index(row, col);
    if ((kx == 0 && ky == 0) || nyquist(g, kx, ky)) {
      spec_a_[i] = spec_b_[i] = spec_c_[i] = spec_d_[i] = 0.0;
      return;
    }
    const double k2 = k0 * k0 * (static_cast<double>(kx) * kx + static_cast<double>(ky) * ky);
    const lp::Complex psi = transport.at(row, col) / k2;
    spec_a_[i] = kI * (k0 * ky) * psi;
    spec_b_[i] = -kI * (k0 * kx) * psi;
    const lp::Complex w = advected.at(row, col);
    spec_c_[i] = kI * (k0 * kx) * w;
    spec_d_[i] = kI * (k0 * ky) * w;
  });
  const lp::FourierTransform& fft = lp::fourier_for(g);
  fft.to_physical(spec_a_, u_, spec_scratch_);
  fft.to_physical(spec_b_, v_, spec_scratch_);
  fft.to_physical(spec_c_, wx_, spec_scratch_);
  fft.to_physical(spec_d_, wy_, spec_scratch_);
  double umax2 = 0.0;
  for (std::size_t i = 0; i < prod_.size(); ++i) {
    prod_[i] = -(u_[i] * wx_[i] + v_[i] * wy_[i]);
    umax2 = std::max(umax2, u_[i] * u_[i] + v_[i] * v_[i]);
  }
  fft.to_spectral(prod_, out.data(), real_scratch_);
  lp::symmetrize(out);
  if (dealias_output) {
    dealias(out);
  } else {
    lp::for_each_mode(g, [&](int row, int col, int kx, int ky) {
      if (nyquist(g, kx, ky)) out.at(row, col) = 0.0;
    });
  }
  out.at(0, 0) = 0.0;
  return std::sqrt(umax2);
}

}  // namespace detmodes::nse
