#pragma once

#include <functional>
#include <string>

#include "detmodes/lp/spectral_field.hpp"

namespace detmodes::nse {

/// Curl of a body force, steady or given by a callback of time.
class Forcing {
 public:
  enum class Kind { steady, time_dependent };
  using Callback = std::function<lp::SpectralField(double t)>;

  /// No forcing on the given grid.
  static Forcing none(const lp::Grid& grid);
  /// Steady force with the given curl; must be Hermitian and mean-free.
  static Forcing steady(lp::SpectralField curl_f, int shell_lo, int shell_hi);
  /// Time-dependent force; the callback must return Hermitian mean-free fields on `grid`.
  static Forcing time_dependent(const lp::Grid& grid, Callback curl_f, int shell_lo, int shell_hi);

  Kind kind() const noexcept { return kind_; }
  bool is_steady() const noexcept { return kind_ == Kind::steady; }
  const lp::Grid& grid() const noexcept { return steady_.grid(); }
  int shell_lo() const noexcept { return shell_lo_; }
  int shell_hi() const noexcept { return shell_hi_; }

  /// curl f at time t.
  lp::SpectralField curl_at(double t) const;
  /// Steady curl; throws std::logic_error for time-dependent forcing.
  const lp::SpectralField& curl() const;

  /// ||f(t)||_2 recovered from curl f (the force is taken divergence-free and mean-free).
  double force_l2_norm(double t = 0.0) const;

  /// Free-form description recorded in checkpoints.
  std::string description;

 private:
  Forcing(Kind kind, lp::SpectralField steady, Callback cb, int lo, int hi);

  Kind kind_;
  lp::SpectralField steady_;
  Callback callback_;
  int shell_lo_;
  int shell_hi_;
};

/// ||f||_2 of the divergence-free, mean-free force whose curl is given.
double force_norm_from_curl(const lp::SpectralField& curl_f);

/// curl f = amplitude * sin(2^shell kappa0 y).
Forcing kolmogorov(const lp::Grid& grid, double amplitude, int shell);

/// Amplitude of the Kolmogorov curl that yields ||f||_2 / (nu^2 kappa0^2) = grashof.
double kolmogorov_amplitude_for_grashof(const lp::Grid& grid, double nu, double grashof, int shell);

}  // namespace detmodes::nse
