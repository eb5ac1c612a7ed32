#include "detmodes/diag/shell_profile.hpp"

#include <algorithm>
#include <cmath>

#include "detmodes/lp/fourier.hpp"
#include "detmodes/lp/littlewood_paley.hpp"
#include "detmodes/lp/norms.hpp"
#include "detmodes/nse/biot_savart.hpp"

namespace detmodes::diag {

namespace {

constexpr lp::Complex kI{0.0, 1.0};

// Max over the grid of sqrt(a^2 + b^2) for two spectral fields.
double vector_linf(const lp::SpectralField& a, const lp::SpectralField& b) {
  const lp::PhysicalField pa = lp::transform_to_physical(a);
  const lp::PhysicalField pb = lp::transform_to_physical(b);
  double m = 0.0;
  for (std::size_t i = 0; i < pa.values.size(); ++i) {
    m = std::max(m, pa.values[i] * pa.values[i] + pb.values[i] * pb.values[i]);
  }
  return std::sqrt(m);
}

std::pair<lp::SpectralField, lp::SpectralField> gradient(const lp::SpectralField& f) {
  const lp::Grid& g = f.grid();
  const double k0 = g.kappa0();
  lp::SpectralField dx(g), dy(g);
  lp::for_each_mode(g, [&](int row, int col, int kx, int ky) {
    if (kx == -g.n() / 2 || ky == g.n() / 2) return;
    dx.at(row, col) = kI * (k0 * kx) * f.at(row, col);
    dy.at(row, col) = kI * (k0 * ky) * f.at(row, col);
  });
  return {std::move(dx), std::move(dy)};
}

}  // namespace

double gradient_linf(const lp::SpectralField& f) {
  const auto [dx, dy] = gradient(f);
  return vector_linf(dx, dy);
}

ShellProfile compute_shell_profile(const lp::SpectralField& omega, double t) {
  const lp::Grid& g = omega.grid();
  ShellProfile p;
  p.t = t;
  p.length = g.length();
  p.q_max = g.q_max();
  const std::size_t count = static_cast<std::size_t>(g.q_max() + 2);
  p.velocity_l2.resize(count);
  p.velocity_linf.resize(count);
  p.vorticity_l2.resize(count);
  p.vorticity_linf.resize(count);
  p.grad_low_l2.resize(count);
  p.grad_low_linf.resize(count);

  const nse::Velocity vel = nse::velocity_from_vorticity(omega);
  for (int q = -1; q <= g.q_max(); ++q) {
    const std::size_t i = ShellProfile::slot(q);
    const lp::SpectralField uq = lp::project_shell(vel.u, q);
    const lp::SpectralField vq = lp::project_shell(vel.v, q);
    p.velocity_l2[i] = std::sqrt(lp::l2_norm_squared(uq) + lp::l2_norm_squared(vq));
    p.velocity_linf[i] = vector_linf(uq, vq);

    const lp::SpectralField wq = lp::project_shell(omega, q);
    p.vorticity_l2[i] = lp::l2_norm(wq);
    p.vorticity_linf[i] = lp::linf_norm(wq);

    const lp::SpectralField low = lp::project_low(omega, q);
    p.grad_low_l2[i] = std::sqrt(lp::gradient_l2_squared(low));
    p.grad_low_linf[i] = gradient_linf(low);
  }
  p.enstrophy = lp::l2_norm_squared(omega);
  p.palinstrophy = lp::gradient_l2_squared(omega);
  return p;
}

}  // namespace detmodes::diag
