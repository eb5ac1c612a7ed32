#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <new>
#include <span>
#include <vector>

#include "detmodes/lp/grid.hpp"

namespace detmodes::lp {

using Complex = std::complex<double>;

/// Allocator returning FFTW-aligned storage so that every buffer can be
/// passed to the new-array execute interface of a shared plan.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() noexcept = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}

  T* allocate(std::size_t count);
  void deallocate(T* ptr, std::size_t) noexcept;

  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

void* fftw_aligned_alloc(std::size_t bytes);
void fftw_aligned_free(void* ptr) noexcept;

template <class T>
T* FftwAllocator<T>::allocate(std::size_t count) {
  if (count > std::numeric_limits<std::size_t>::max() / sizeof(T)) {
    throw std::bad_array_new_length();
  }
  return static_cast<T*>(fftw_aligned_alloc(count * sizeof(T)));
}

template <class T>
void FftwAllocator<T>::deallocate(T* ptr, std::size_t) noexcept {
  fftw_aligned_free(ptr);
}

using ComplexBuffer = std::vector<Complex, FftwAllocator<Complex>>;
using RealBuffer = std::vector<double, FftwAllocator<double>>;

/// Fourier coefficients of a real scalar field on a periodic grid.
///
/// Convention: f(x) = sum_k coeff(k) exp(i kappa0 k.x), so coeff(0) is the
/// spatial mean. Only the half plane ky >= 0 is stored; coefficients with
/// ky < 0 are implied by Hermitian symmetry.
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }

  Complex& at(int row, int col) noexcept { return coeffs_[grid_.index(row, col)]; }
  const Complex& at(int row, int col) const noexcept { return coeffs_[grid_.index(row, col)]; }

  /// Coefficient at any lattice point in [-n/2, n/2)^2.
  Complex coeff(int kx, int ky) const;

  /// Sets coeff(k) and the conjugate partner coeff(-k) consistently.
  void set_mode(int kx, int ky, Complex value);

  std::span<Complex> data() noexcept { return coeffs_; }
  std::span<const Complex> data() const noexcept { return coeffs_; }

  void fill(Complex value);

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  Grid grid_;
  ComplexBuffer coeffs_;
};

/// Real samples of a field on the collocation grid, x-major: value(i, j) at
/// (i L/n, j L/n) is stored at i * n + j.
struct PhysicalField {
  explicit PhysicalField(const Grid& g) : grid(g), values(g.physical_size(), 0.0) {}

  double& operator()(int i, int j) noexcept {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.n()) +
                  static_cast<std::size_t>(j)];
  }
  double operator()(int i, int j) const noexcept {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.n()) +
                  static_cast<std::size_t>(j)];
  }

  Grid grid;
  RealBuffer values;
};

/// Largest violation |coeff(-k) - conj(coeff(k))| over the self-conjugate lines.
double hermitian_defect(const SpectralField& f);

/// Replaces each self-conjugate pair by its Hermitian average. The difference
/// of two nearly synchronized states inherits the round-off defects of both
/// parents while its own coefficients can be many orders smaller, so such a
/// difference needs this before a transform.
void symmetrize(SpectralField& f);

/// Throws SymmetryError if the defect exceeds tol times the largest coefficient.
void require_hermitian(const SpectralField& f, double tol = 1e-12);

/// Throws MismatchError unless both fields share a grid.
void require_same_grid(const Grid& a, const Grid& b, const char* context);

}  // namespace detmodes::lp
