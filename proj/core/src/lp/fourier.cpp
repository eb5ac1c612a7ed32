#include "detmodes/lp/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace detmodes::lp {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

FourierTransform::FourierTransform(const Grid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  RealBuffer real(grid.physical_size());
  ComplexBuffer spec(grid.spectral_size());
  std::lock_guard lock(planner_mutex());
  const int n = grid.n();
  plans_->forward = fftw_plan_dft_r2c_2d(n, n, real.data(), as_fftw(spec.data()), FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_c2r_2d(n, n, as_fftw(spec.data()), real.data(), FFTW_ESTIMATE);
  if (plans_->forward == nullptr || plans_->backward == nullptr) {
    throw std::runtime_error("FFTW planning failed");
  }
}

FourierTransform::~FourierTransform() {
  std::lock_guard lock(planner_mutex());
  if (plans_->forward != nullptr) fftw_destroy_plan(plans_->forward);
  if (plans_->backward != nullptr) fftw_destroy_plan(plans_->backward);
}

void FourierTransform::to_physical(std::span<const Complex> coeffs, std::span<double> out,
                                   std::span<Complex> scratch) const {
  // c2r overwrites its input, so work on a copy.
  std::copy(coeffs.begin(), coeffs.end(), scratch.begin());
  fftw_execute_dft_c2r(plans_->backward, as_fftw(scratch.data()), out.data());
}

void FourierTransform::to_spectral(std::span<const double> values, std::span<Complex> out,
                                   std::span<double> scratch) const {
  std::copy(values.begin(), values.end(), scratch.begin());
  fftw_execute_dft_r2c(plans_->forward, scratch.data(), as_fftw(out.data()));
  const double norm = 1.0 / static_cast<double>(grid_.physical_size());
  for (auto& c : out) c *= norm;
}

void FourierTransform::to_physical(const SpectralField& f, PhysicalField& out) const {
  ComplexBuffer scratch(grid_.spectral_size());
  to_physical(f.data(), out.values, scratch);
}

void FourierTransform::to_spectral(const PhysicalField& values, SpectralField& out) const {
  RealBuffer scratch(grid_.physical_size());
  to_spectral(values.values, out.data(), scratch);
}

const FourierTransform& fourier_for(const Grid& grid) {
  thread_local std::map<std::pair<int, double>, std::unique_ptr<FourierTransform>> cache;
  auto key = std::make_pair(grid.n(), grid.length());
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<FourierTransform>(grid)).first;
  }
  return *it->second;
}

PhysicalField transform_to_physical(const SpectralField& f) {
  require_hermitian(f);
  PhysicalField out(f.grid());
  fourier_for(f.grid()).to_physical(f, out);
  return out;
}

SpectralField transform_to_spectral(const PhysicalField& values) {
  SpectralField out(values.grid);
  fourier_for(values.grid).to_spectral(values, out);
  // The r2c output is Hermitian on the self-conjugate lines only up to
  // round-off; exact symmetry keeps tiny bands and differences transformable.
  symmetrize(out);
  return out;
}

}  // namespace detmodes::lp
