#pragma once

#include <memory>
#include <span>

#include "detmodes/lp/grid.hpp"
#include "detmodes/lp/spectral_field.hpp"

namespace detmodes::lp {

/// FFTW real-to-complex / complex-to-real plan pair for one grid size.
///
/// Plans are built with FFTW_ESTIMATE so that the chosen algorithm, and hence
/// the rounding pattern, is identical from run to run. Planning is serialized
/// through a process-wide mutex; execution uses the new-array interface and is
/// safe from any thread as long as each thread owns its scratch buffers.
class FourierTransform {
 public:
  explicit FourierTransform(const Grid& grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  const Grid& grid() const noexcept { return grid_; }

  /// Inverse transform: physical values from spectral coefficients.
  /// `scratch` must have spectral_size() entries; it is overwritten.
  void to_physical(std::span<const Complex> coeffs, std::span<double> out,
                   std::span<Complex> scratch) const;

  /// Forward transform including the 1/n^2 normalization.
  /// `scratch` must have physical_size() entries; it is overwritten.
  void to_spectral(std::span<const double> values, std::span<Complex> out,
                   std::span<double> scratch) const;

  /// Convenience overloads that allocate their own scratch.
  void to_physical(const SpectralField& f, PhysicalField& out) const;
  void to_spectral(const PhysicalField& values, SpectralField& out) const;

 private:
  struct Plans;
  Grid grid_;
  std::unique_ptr<Plans> plans_;
};

/// Per-thread transform cache keyed by grid size.
const FourierTransform& fourier_for(const Grid& grid);

/// Inverse discrete Fourier transform. Throws SymmetryError on non-Hermitian input.
PhysicalField transform_to_physical(const SpectralField& f);

/// Forward discrete Fourier transform of real samples.
SpectralField transform_to_spectral(const PhysicalField& values);

}  // namespace detmodes::lp
