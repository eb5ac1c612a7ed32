#pragma once

namespace detmodes::diag {

struct KraichnanNumber {
  double eta = 0.0;        // L^{-d} nu <||Lap u||^2>
  double kappa_eta = 0.0;  // (eta / nu^3)^{1/(d+4)}
};

/// Enstrophy dissipation per unit active volume and the dissipation wavenumber.
/// Throws std::invalid_argument unless 0 <= d <= 2, nu > 0, L > 0 and
/// avg_palinstrophy >= 0.
KraichnanNumber kraichnan_number(double avg_palinstrophy, double d, double nu, double length);

/// Upper bound sqrt[4]{2} kappa0 G^{2/(d+4)} valid for T = 1/(nu kappa0^2) and G >= 1.
double kraichnan_bound(double grashof, double d, double length);

}  // namespace detmodes::diag
