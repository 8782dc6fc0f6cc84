#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace filament {

using Complex = std::complex<double>;
using CoeffVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// 0 selects the planar interface, 1 the zonal interface on the sphere.
enum class Sigma : int { planar = 0, spherical = 1 };

Sigma sigma_from_int(int value);
constexpr int to_int(Sigma s) { return static_cast<int>(s); }
constexpr double to_double(Sigma s) { return static_cast<double>(s); }

/// Fourier coefficients a_1..a_N of a positive-spectrum field on the 2pi-torus.
///
/// Modes k <= 0 have no storage, so the field has zero mean and positive
/// spectrum by construction. Instances are immutable.
class SpectralState {
 public:
  SpectralState(Sigma sigma, CoeffVector coeffs);

  static SpectralState zero(Sigma sigma, int n_modes);

  Sigma sigma() const noexcept { return sigma_; }
  int n_modes() const noexcept { return static_cast<int>(coeffs_.size()); }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  /// Coefficient a_k for 1 <= k <= n_modes.
  Complex mode(int k) const;

  SpectralState with_coeffs(CoeffVector coeffs) const;
  SpectralState with_sigma(Sigma sigma) const;

 private:
  Sigma sigma_;
  CoeffVector coeffs_;
};

/// Equispaced samples at x_j = 2 pi j / M.
class GridField {
 public:
  explicit GridField(CoeffVector samples);

  int grid_size() const noexcept { return static_cast<int>(samples_.size()); }
  std::span<const Complex> samples() const noexcept { return samples_; }

 private:
  CoeffVector samples_;
};

/// Diagonal Fourier multiplier acting on modes k >= 1.
class Multiplier {
 public:
  enum class Kind { lambda, lambda_inv, d_x, q_cutoff };

  static Multiplier lambda() { return Multiplier(Kind::lambda, 0); }
  static Multiplier lambda_inv() { return Multiplier(Kind::lambda_inv, 0); }
  static Multiplier d_x() { return Multiplier(Kind::d_x, 0); }
  static Multiplier q_cutoff(int cutoff);

  /// Accepts "lambda", "lambda_inv", "d_x" and "q_cutoff:<J>".
  static Multiplier parse(const std::string& id);

  Kind kind() const noexcept { return kind_; }
  int cutoff() const noexcept { return cutoff_; }
  Complex symbol(int k) const;

 private:
  Multiplier(Kind kind, int cutoff) : kind_(kind), cutoff_(cutoff) {}

  Kind kind_;
  int cutoff_;
};

SpectralState apply_multiplier(const SpectralState& state, const Multiplier& which);

/// Exact synthesis u(x_j) on an M-point grid; requires M >= n_modes + 1.
GridField to_grid(const SpectralState& state, int grid_size);

/// Discrete analysis keeping modes 1..n_modes (projects away k <= 0 and k > N).
SpectralState from_grid(const GridField& field, int n_modes, Sigma sigma = Sigma::planar);

/// Smallest integer >= min_size whose prime factors are all in {2,3,5,7}.
int fft_size(int min_size);

/// Collocation grid size used for cubic and quartic products of N modes.
int dealiased_grid_size(int n_modes);

}  // namespace filament
