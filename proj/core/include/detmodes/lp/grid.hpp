#pragma once

#include <cstddef>
#include <numbers>

namespace detmodes::lp {

/// Square periodic collocation grid on [0, L)^2 with n points per side.
///
/// Spectral storage follows the real-to-complex layout: n rows indexed by the
/// x-wavenumber in FFT order (0, 1, ..., n/2-1, -n/2, ..., -1) and n/2+1
/// columns holding the non-negative y-wavenumbers 0..n/2. Lattice indices are
/// integers; the physical wavenumber of lattice index k is kappa0 * k.
class Grid {
 public:
  Grid(int n, double length);

  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  int columns() const noexcept { return n_ / 2 + 1; }
  std::size_t spectral_size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(columns());
  }
  std::size_t physical_size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  }
  double spacing() const noexcept { return length_ / n_; }
  double cell_area() const noexcept { return spacing() * spacing(); }

  /// kappa0 = 2 pi / L.
  double kappa0() const noexcept { return 2.0 * std::numbers::pi / length_; }

  /// Shell wavenumber lambda_q = 2^q / L.
  double shell_wavenumber(int q) const noexcept;

  /// Largest shell untouched by dealiasing: floor(log2(n/3)).
  int q_max() const noexcept { return q_max_; }

  /// Radius (in lattice units) of the circular 2/3-rule truncation.
  double dealias_radius() const noexcept { return n_ / 3.0; }

  /// Signed lattice x-index of a storage row.
  int kx_of_row(int row) const noexcept { return row < n_ / 2 ? row : row - n_; }
  /// Storage row of a signed lattice x-index in [-n/2, n/2).
  int row_of_kx(int kx) const noexcept { return kx >= 0 ? kx : kx + n_; }

  std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(columns()) +
           static_cast<std::size_t>(col);
  }

  /// Whether lattice point k survives the circular 2/3-rule truncation.
  bool dealiased(int kx, int ky) const noexcept;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  int n_;
  double length_;
  int q_max_;
};

/// Calls fn(row, col, kx, ky) for every stored spectral coefficient.
template <class Fn>
void for_each_mode(const Grid& grid, Fn&& fn) {
  const int n = grid.n();
  const int cols = grid.columns();
  for (int row = 0; row < n; ++row) {
    const int kx = grid.kx_of_row(row);
    for (int col = 0; col < cols; ++col) {
      fn(row, col, kx, col);
    }
  }
}

/// Multiplicity of a stored half-plane coefficient in full-lattice sums.
/// Columns 0 and n/2 are self-conjugate lines and count once.
inline double hermitian_weight(const Grid& grid, int col) noexcept {
  return (col == 0 || col == grid.n() / 2) ? 1.0 : 2.0;
}

}  // namespace detmodes::lp
