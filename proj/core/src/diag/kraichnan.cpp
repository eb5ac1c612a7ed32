#include "detmodes/diag/kraichnan.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace detmodes::diag {

KraichnanNumber kraichnan_number(double avg_palinstrophy, double d, double nu, double length) {
  if (!(d >= 0.0 && d <= 2.0)) throw std::invalid_argument("intermittency dimension must lie in [0, 2]");
  if (!(nu > 0.0) || !(length > 0.0)) throw std::invalid_argument("nu and L must be positive");
  if (!(avg_palinstrophy >= 0.0)) throw std::invalid_argument("average palinstrophy must be >= 0");
  KraichnanNumber k;
  k.eta = std::pow(length, -d) * nu * avg_palinstrophy;
  k.kappa_eta = std::pow(k.eta / (nu * nu * nu), 1.0 / (d + 4.0));
  return k;
}

double kraichnan_bound(double grashof, double d, double length) {
  const double k0 = 2.0 * std::numbers::pi / length;
  return std::pow(2.0, 0.25) * k0 * std::pow(grashof, 2.0 / (d + 4.0));
}

}  // namespace detmodes::diag
