#include "detmodes/lp/grid.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace detmodes::lp {

Grid::Grid(int n, double length) : n_(n), length_(length), q_max_(0) {
  if (n < 8 || !std::has_single_bit(static_cast<unsigned>(n))) {
    throw std::invalid_argument("grid size must be a power of two >= 8, got " +
                                std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("domain length must be positive and finite");
  }
  // floor(log2(n/3)) without floating-point log: largest q with 3 * 2^q <= n.
  int q = 0;
  while (3 * (1 << (q + 1)) <= n) {
    ++q;
  }
  q_max_ = q;
}

double Grid::shell_wavenumber(int q) const noexcept {
  return std::ldexp(1.0, q) / length_;
}

bool Grid::dealiased(int kx, int ky) const noexcept {
  // |k| < n/3, i.e. 9 |k|^2 < n^2, in exact integer arithmetic.
  const long long k2 = static_cast<long long>(kx) * kx + static_cast<long long>(ky) * ky;
  return 9 * k2 < static_cast<long long>(n_) * n_;
}

}  // namespace detmodes::lp
