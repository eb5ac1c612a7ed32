#include "detmodes/lp/spectral_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detmodes/errors.hpp"

namespace detmodes::lp {

void* fftw_aligned_alloc(std::size_t bytes) {
  void* ptr = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (ptr == nullptr) {
    throw std::bad_alloc();
  }
  return ptr;
}

void fftw_aligned_free(void* ptr) noexcept { fftw_free(ptr); }

SpectralField::SpectralField(const Grid& grid)
    : grid_(grid), coeffs_(grid.spectral_size(), Complex{0.0, 0.0}) {}

namespace {

int wrap_index(int k, int n) {
  int r = k % n;
  if (r < -n / 2) r += n;
  if (r >= n / 2) r -= n;
  return r;
}

}  // namespace

Complex SpectralField::coeff(int kx, int ky) const {
  const int n = grid_.n();
  kx = wrap_index(kx, n);
  ky = wrap_index(ky, n);
  if (ky == -n / 2) {
    return at(grid_.row_of_kx(kx), n / 2);
  }
  if (ky < 0) {
    return std::conj(at(grid_.row_of_kx(wrap_index(-kx, n)), -ky));
  }
  return at(grid_.row_of_kx(kx), ky);
}

void SpectralField::set_mode(int kx, int ky, Complex value) {
  const int n = grid_.n();
  kx = wrap_index(kx, n);
  ky = wrap_index(ky, n);
  if (ky == -n / 2) {
    ky = n / 2;
  } else if (ky < 0) {
    kx = wrap_index(-kx, n);
    ky = -ky;
    value = std::conj(value);
  }
  const int row = grid_.row_of_kx(kx);
  if (ky == 0 || ky == n / 2) {
    const int partner = grid_.row_of_kx(wrap_index(-kx, n));
    if (partner == row) {
      value = Complex{value.real(), 0.0};
    }
    at(partner, ky) = std::conj(value);
  }
  at(row, ky) = value;
}

void SpectralField::fill(Complex value) { std::fill(coeffs_.begin(), coeffs_.end(), value); }

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField::operator+=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField::operator-=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

double hermitian_defect(const SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  double defect = 0.0;
  for (int col : {0, n / 2}) {
    for (int row = 0; row < n; ++row) {
      const int kx = g.kx_of_row(row);
      const int mrow = g.row_of_kx(kx == -n / 2 ? kx : -kx);
      defect = std::max(defect, std::abs(f.at(mrow, col) - std::conj(f.at(row, col))));
    }
  }
  return defect;
}

void symmetrize(SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  for (int col : {0, n / 2}) {
    for (int row = 0; row < n; ++row) {
      const int kx = g.kx_of_row(row);
      const int mrow = g.row_of_kx(kx == -n / 2 ? kx : -kx);
      if (mrow < row) continue;
      const Complex avg = 0.5 * (f.at(row, col) + std::conj(f.at(mrow, col)));
      f.at(row, col) = avg;
      f.at(mrow, col) = std::conj(avg);
    }
  }
}

void require_hermitian(const SpectralField& f, double tol) {
  double scale = 0.0;
  for (const auto& c : f.data()) scale = std::max(scale, std::abs(c));
  const double defect = hermitian_defect(f);
  if (defect > tol * scale) {
    std::ostringstream msg;
    msg << "spectral field violates Hermitian symmetry: defect " << defect
        << " exceeds " << tol << " x max coefficient " << scale;
    throw SymmetryError(msg.str());
  }
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (!(a == b)) {
    std::ostringstream msg;
    msg << context << ": grid mismatch (" << a.n() << ", L=" << a.length() << ") vs ("
        << b.n() << ", L=" << b.length() << ")";
    throw MismatchError(msg.str());
  }
}

}  // namespace detmodes::lp
