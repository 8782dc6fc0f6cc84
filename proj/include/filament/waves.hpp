#pragma once

#include <cstdint>
#include <vector>

#include "filament/integrator.hpp"
#include "filament/spectral_state.hpp"

namespace filament {

/// Psi_k = e^{ikx}: a_k = 1, all other modes zero. Requires 1 <= k <= N.
SpectralState make_psi_k(int k, Sigma sigma, int n_modes);

/// A e^{ix} + B e^{ikx} for the spherical case. Requires 2 <= k <= N.
SpectralState make_two_mode(Complex a, Complex b, int k, int n_modes);

/// Profile Phi with speed c and phase rate omega of a wave Phi(x - ct) e^{i omega t}.
struct TravelingWaveSpec {
  SpectralState profile;
  double speed = 0.0;
  double phase_rate = 0.0;
  /// P-norm of -c Phi + omega Lambda^{-1} Phi - C_sigma[Phi] over modes 1..2N-1.
  double residual = 0.0;
  /// |-c P + omega M - (pi/2) E_sigma|.
  double pairing_defect = 0.0;
};

TravelingWaveSpec wave_residual(const SpectralState& profile, double speed, double phase_rate);

struct StationaryReport {
  double rhs_norm = 0.0;
  /// rhs_norm is below tolerance.
  bool stationary = false;
  /// State lies in the known stationary set: zero (sigma = 0) or C e^{ix} (sigma = 1).
  bool in_stationary_set = false;
};

StationaryReport stationary_scan(const SpectralState& state, double tol = 1e-12);

/// min over theta, x0 of the P-distance from state to e^{i theta} reference(. + x0).
///
/// theta is optimized in closed form; x0 by a 1024-point scan followed by
/// golden-section refinement of the best bracket.
double orbit_distance(const SpectralState& state, const SpectralState& reference);

struct ProbeSample {
  double t = 0.0;
  double orbit_distance = 0.0;
  double energy = 0.0;
  double momentum = 0.0;
  double mass = 0.0;
};

/// Evolves Psi_k + eps * d, d a seeded random unit direction, and records the
/// distance to the symmetry orbit of Psi_k at every sample. k must be 1 or 2.
std::vector<ProbeSample> orbital_stability_probe(int k, Sigma sigma, double eps, int n_modes,
                                                 const StepperConfig& config, std::uint64_t seed);

struct TwoModePhaseReport {
  double measured_rate = 0.0;
  /// k(k-1)|B|^2, from the min-weight triple sum.
  double derived_rate = 0.0;
  /// k(k-1)(2|A|^2 + |B|^2), the alternative closed form.
  double alternative_rate = 0.0;
  double a1_drift = 0.0;
  double ak_modulus_drift = 0.0;
};

/// Integrates the two-mode state and measures d/dt arg a_k by phase unwrapping.
TwoModePhaseReport two_mode_phase_probe(Complex a, Complex b, int k, int n_modes,
                                        const StepperConfig& config);

}  // namespace filament
