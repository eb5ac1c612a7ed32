#pragma once

#include <memory>
#include <vector>

#include "detmodes/lp/grid.hpp"
#include "detmodes/lp/spectral_field.hpp"

namespace detmodes::lp {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}) between.
double smooth_step(double t) noexcept;

/// Radial cutoff chi: 1 on |xi| <= 3/4, 0 on |xi| >= 1, smooth and nonincreasing between.
double chi(double radius) noexcept;

/// Band profile phi(xi) = chi(xi / 2) - chi(xi).
double phi(double radius) noexcept;

/// Dyadic weight phi_q(k) for q >= 0 and chi(k) for q = -1, evaluated at lattice radius |k|.
double shell_weight(int q, double radius) noexcept;

/// Weight of the low projection u_{<=Q}, i.e. sum_{q=-1}^{Q} phi_q(k) = chi(2^{-Q-1} |k|).
double low_pass_weight(int cutoff, double radius) noexcept;

/// Cached dyadic multipliers phi_q(k) for every stored coefficient of one grid.
///
/// Immutable after construction and safe to share between threads.
class ShellBasis {
 public:
  explicit ShellBasis(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  int q_min() const noexcept { return -1; }
  int q_max() const noexcept { return grid_.q_max(); }
  int shell_count() const noexcept { return grid_.q_max() + 2; }

  /// phi_q on the stored half plane; q in [-1, q_max].
  const std::vector<double>& shell(int q) const;
  /// chi(2^{-Q-1}|k|) on the stored half plane; Q in [-1, q_max].
  const std::vector<double>& low(int cutoff) const;

  /// Whether the partition of unity is complete at lattice radius |k|:
  /// chi + sum_{q<=q_max} phi_q = 1 exactly for |k| <= (3/4) 2^{q_max+1}.
  bool resolved(int kx, int ky) const noexcept;

 private:
  Grid grid_;
  std::vector<std::vector<double>> shells_;
  std::vector<std::vector<double>> lows_;
};

/// Process-wide cache of shell bases, one per grid.
std::shared_ptr<const ShellBasis> shell_basis(const Grid& grid);

/// The dyadic bands u_q, q = -1..q_max, of a field.
struct ShellDecomposition {
  int q_min = -1;
  int q_max = -1;
  std::vector<SpectralField> bands;

  const SpectralField& band(int q) const { return bands.at(static_cast<std::size_t>(q - q_min)); }
  SpectralField sum() const;
};

/// q-th Littlewood-Paley projection. Throws std::out_of_range unless -1 <= q <= q_max.
SpectralField project_shell(const SpectralField& f, int q);

/// u_{<=Q} = sum_{q=-1}^{Q} u_q. Q may exceed q_max (the multiplier stays well defined).
SpectralField project_low(const SpectralField& f, int cutoff);

/// u_{(P,Q]} = u_{<=Q} - u_{<=P}.
SpectralField project_band(const SpectralField& f, int lower_exclusive, int upper_inclusive);

/// u_{q-1} + u_q + u_{q+1}, clipped to the resolved shell range.
SpectralField project_neighbourhood(const SpectralField& f, int q);

ShellDecomposition decompose(const SpectralField& f);

}  // namespace detmodes::lp
