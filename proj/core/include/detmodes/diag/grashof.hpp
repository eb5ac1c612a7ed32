#pragma once

#include <span>

#include "detmodes/diag/time_average.hpp"
#include "detmodes/nse/forcing.hpp"

namespace detmodes::diag {

/// ||f||_2 / (nu^2 kappa0^2) from a force norm and domain size.
double grashof_from_norm(double force_l2, double nu, double length);

/// Grashof number of a steady force. Throws std::invalid_argument for
/// time-dependent forcing.
double grashof_steady(const nse::Forcing& f, double nu, double length);

/// (x / (1 - e^{-x}))^{1/2}, tending to 1 as x -> 0.
double averaging_time_factor(double x);

/// Grashof number for a force that is translation bounded in time:
/// (||f||_{L2_b(T)} / (nu^2 kappa0^2)) (x / (1 - e^{-x}))^{1/2}, x = nu kappa0^2 T,
/// where ||f||_{L2_b(T)}^2 is the largest window mean of ||f(t)||_2^2.
/// `force_norms` holds samples of ||f(t)||_2 spanning at least one window.
double grashof_nonautonomous(std::span<const TimeSample> force_norms, double nu, double length,
                             double window);

/// Samples ||f(t)||_2 on [t0, t1] at `count` evenly spaced times.
std::vector<TimeSample> sample_force_norm(const nse::Forcing& f, double t0, double t1, int count);

/// F / (nu^2 kappa0^2) with F the largest ||f(t)||_2 after the transient (limsup variant).
double grashof_limsup(std::span<const TimeSample> force_norms, double nu, double length,
                      double transient_fraction = 0.5);

}  // namespace detmodes::diag
