#pragma once

#include <span>

#include "filament/fourier_grid.hpp"
#include "filament/spectral_state.hpp"

namespace filament {

/// Coefficients of the cubic term C_sigma[u] for a state with N modes.
///
/// The truncated cubic sum is supported on modes 1..2N-1; the Galerkin flow
/// uses only the first N of them.
class NonlinearityResult {
 public:
  NonlinearityResult(int n_modes, CoeffVector coeffs_full);

  int n_modes() const noexcept { return n_modes_; }
  std::span<const Complex> coeffs_full() const noexcept { return full_; }
  std::span<const Complex> coeffs_truncated() const noexcept {
    return std::span<const Complex>(full_).first(static_cast<size_t>(n_modes_));
  }

 private:
  int n_modes_;
  CoeffVector full_;
};

/// Reference triple sum with weight min(k, l, m, p) - sigma, O(N^3).
NonlinearityResult c_sigma_direct(const SpectralState& state);

/// Triple sum with the unsymmetrized weight k - |k - p| - sigma.
NonlinearityResult c_sigma_unsym(const SpectralState& state);

/// Reusable transform buffers for the pseudospectral evaluation of C_sigma.
class CubicWorkspace {
 public:
  explicit CubicWorkspace(int n_modes);

  int n_modes() const noexcept { return n_modes_; }
  int grid_size() const noexcept { return grid_.size(); }

 private:
  friend void c_sigma_fast_into(Sigma, std::span<const Complex>, CubicWorkspace&,
                                std::span<Complex>);

  // sigma = 0 operator for any state with at most n_modes_ modes.
  void planar_cubic(std::span<const Complex> coeffs, std::span<Complex> out);

  int n_modes_;
  FourierGrid grid_;
  CoeffVector u_, lambda_u_, density_, lambda_density_, bins_;
};

/// P+[ |u|^2 Lambda u - u Lambda |u|^2 - sigma |u|^2 u ] on a de-aliased grid.
///
/// Writes modes 1..out.size() of the result; out.size() must not exceed 2N-1.
void c_sigma_fast_into(Sigma sigma, std::span<const Complex> coeffs, CubicWorkspace& work,
                       std::span<Complex> out);

NonlinearityResult c_sigma_fast(const SpectralState& state, CubicWorkspace& work);
NonlinearityResult c_sigma_fast(const SpectralState& state);

/// Midpoint quadrature of the singular-integral definition of C_sigma.
///
/// The offsets z_j = (j + 1/2) 2pi / n_quad never hit the removable singularity
/// at z = 0. Requires n_quad >= 8N.
NonlinearityResult c_sigma_quadrature(const SpectralState& state, int n_quad);

/// Midpoint rule for the integral of (1 - cos mz)/(1 - cos z) over [0, 2pi]; exact value 2 pi |m|.
double kernel_integral(int m, int n_quad);

/// Smallest divisor of n that is >= lower, or n itself.
int smallest_divisor_at_least(int n, int lower);

/// Synthesizes u at the shifted points 2 pi (j - 1/2) / n, j = 0..n-1.
CoeffVector synthesize_half_shifted(std::span<const Complex> coeffs, int n);

}  // namespace filament
