#pragma once

#include <map>
#include <span>

#include "filament/spectral_state.hpp"

namespace filament {

/// Conserved quantities and diagnostics for one state.
struct InvariantReport {
  double energy = 0.0;
  double momentum = 0.0;
  double mass = 0.0;
  Complex a1{};
  std::map<double, double> h_s_norms;
};

/// E_sigma = 4 sum_{k+l=m+n} (min(k,l,m,n) - sigma) a_k a_l conj(a_m a_n).
/// Exact reference route.
double energy_spectral(const SpectralState& state);

/// Midpoint quadrature of the Gagliardo double integral plus the L^4 term.
/// Requires n_quad >= 8N.
double energy_quadrature(const SpectralState& state, int n_quad);

/// Multiplier form (1/2pi) int [-4|u|^2 Lambda|u|^2 + 4|u|^2 Re(conj(u) Lambda u)] - (2 sigma/pi) int |u|^4,
/// evaluated on a de-aliased grid.
double energy_lambda_form(const SpectralState& state);

/// P = 2 pi sum |a_k|^2.
double momentum(const SpectralState& state);

/// M = 2 pi sum |a_k|^2 / k.
double mass(const SpectralState& state);

Complex first_mode(const SpectralState& state);

/// (2 pi sum k^{2s} |a_k|^2)^{1/2}; s >= -1.
double sobolev_norm(const SpectralState& state, double s);

InvariantReport make_report(const SpectralState& state, std::span<const double> sobolev_exponents = {});

/// |2 pi sum conj(C_p) a_p - (pi/2) E_sigma|.
double pairing_check(const SpectralState& state);

/// max_p |finite-difference gradient of E along mode p - 8 C_p|, with central
/// differences of step h in both the real and imaginary directions.
double energy_gradient_check(const SpectralState& state, double h);

/// b_j = a_{j+1}: the coefficients of e^{-ix} u with the constant mode dropped.
/// Keeps n_modes (the top mode becomes zero). Satisfies E_0(shift_down(u)) = E_1(u).
SpectralState shift_down(const SpectralState& state);

/// a_k -> e^{i theta} a_k e^{i k x0}.
SpectralState rotate_translate(const SpectralState& state, double theta, double x0);

SpectralState scaled(const SpectralState& state, Complex factor);

/// sqrt(2 pi sum |a_k - b_k|^2); n_modes and sigma must match.
double p_distance(const SpectralState& a, const SpectralState& b);

/// sqrt(2 pi sum |c_k|^2) for a raw coefficient vector.
double p_norm(std::span<const Complex> coeffs);

}  // namespace filament
