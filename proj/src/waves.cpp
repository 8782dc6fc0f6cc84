#include "filament/waves.hpp"

#include <algorithm>
#include <cmath>

#include "filament/errors.hpp"
#include "filament/invariants.hpp"
#include "filament/nonlinearity.hpp"
#include "filament/random_state.hpp"

namespace filament {

SpectralState make_psi_k(int k, Sigma sigma, int n_modes) {
  if (n_modes < 1 || k < 1 || k > n_modes) {
    throw UsageError("make_psi_k: need 1 <= k <= n_modes");
  }
  CoeffVector a(static_cast<size_t>(n_modes));
  a[k - 1] = 1.0;
  return SpectralState(sigma, std::move(a));
}

SpectralState make_two_mode(Complex a, Complex b, int k, int n_modes) {
  if (k < 2 || k > n_modes) throw UsageError("make_two_mode: need 2 <= k <= n_modes");
  CoeffVector coeffs(static_cast<size_t>(n_modes));
  coeffs[0] = a;
  coeffs[k - 1] = b;
  return SpectralState(Sigma::spherical, std::move(coeffs));
}

TravelingWaveSpec wave_residual(const SpectralState& profile, double speed, double phase_rate) {
  const NonlinearityResult c = c_sigma_direct(profile);
  const auto full = c.coeffs_full();
  CoeffVector defect(full.size());
  for (size_t p = 1; p <= full.size(); ++p) {
    Complex lhs{};
    if (static_cast<int>(p) <= profile.n_modes()) {
      const Complex phi = profile.coeffs()[p - 1];
      lhs = -speed * phi + phase_rate / static_cast<double>(p) * phi;
    }
    defect[p - 1] = lhs - full[p - 1];
  }
  TravelingWaveSpec spec{profile, speed, phase_rate, p_norm(defect), 0.0};
  spec.pairing_defect = std::abs(-speed * momentum(profile) + phase_rate * mass(profile) -
                                 0.5 * kPi * energy_spectral(profile));
  return spec;
}

StationaryReport stationary_scan(const SpectralState& state, double tol) {
  StationaryReport report;
  report.rhs_norm = p_norm(rhs(state).coeffs());
  const double norm = p_norm(state.coeffs());
  report.stationary = report.rhs_norm <= tol * (1.0 + norm * norm * norm);
  if (state.sigma() == Sigma::planar) {
    report.in_stationary_set = norm <= tol;
  } else {
    const double off_first = p_norm(state.coeffs().subspan(1));
    report.in_stationary_set = off_first <= tol * (1.0 + norm);
  }
  return report;
}

double orbit_distance(const SpectralState& state, const SpectralState& reference) {
  if (state.n_modes() != reference.n_modes()) {
    throw UsageError("orbit_distance: n_modes mismatch");
  }
  const auto u = state.coeffs();
  const auto r = reference.coeffs();
  const int n = state.n_modes();
  // |<r(. + x0), u>| as a function of the translation x0.
  auto overlap = [&](double x0) {
    Complex acc{};
    for (int k = 1; k <= n; ++k) acc += std::conj(r[k - 1]) * u[k - 1] * std::polar(1.0, -k * x0);
    return kTwoPi * std::abs(acc);
  };

  constexpr int kScan = 1024;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i < kScan; ++i) {
    const double v = overlap(kTwoPi * i / kScan);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = kTwoPi * (best - 1) / kScan;
  double hi = kTwoPi * (best + 1) / kScan;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = overlap(x1);
  double f2 = overlap(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = overlap(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = overlap(x2);
    }
  }
  best_val = std::max({best_val, f1, f2});

  const double uu = std::pow(p_norm(u), 2);
  const double rr = std::pow(p_norm(r), 2);
  return std::sqrt(std::max(0.0, uu + rr - 2.0 * best_val));
}

std::vector<ProbeSample> orbital_stability_probe(int k, Sigma sigma, double eps, int n_modes,
                                                 const StepperConfig& config, std::uint64_t seed) {
  if (k != 1 && k != 2) throw UsageError("orbital_stability_probe: k must be 1 or 2");
  if (!(eps >= 0.0 && eps <= 0.1)) throw UsageError("orbital_stability_probe: eps must lie in [0, 0.1]");
  const SpectralState psi = make_psi_k(k, sigma, n_modes);
  const CoeffVector direction = random_unit_direction(n_modes, seed);
  CoeffVector start(psi.coeffs().begin(), psi.coeffs().end());
  for (int i = 0; i < n_modes; ++i) start[i] += eps * direction[i];

  std::vector<ProbeSample> out;
  simulate_streaming(psi.with_coeffs(std::move(start)), config,
                     [&](long long, double t, const SpectralState& s, const InvariantReport& r) {
                       out.push_back({t, orbit_distance(s, psi), r.energy, r.momentum, r.mass});
                     });
  return out;
}

TwoModePhaseReport two_mode_phase_probe(Complex a, Complex b, int k, int n_modes,
                                        const StepperConfig& config) {
  const SpectralState initial = make_two_mode(a, b, k, n_modes);
  const double a2 = std::norm(a);
  const double b2 = std::norm(b);
  if (b2 == 0.0) throw UsageError("two_mode_phase_probe: B must be nonzero");

  TwoModePhaseReport report;
  report.derived_rate = k * (k - 1.0) * b2;
  report.alternative_rate = k * (k - 1.0) * (2.0 * a2 + b2);

  double unwrapped = 0.0;
  double last_arg = std::arg(b);
  double last_t = 0.0;
  simulate_streaming(initial, config,
                     [&](long long, double t, const SpectralState& s, const InvariantReport&) {
                       const Complex ak = s.coeffs()[k - 1];
                       const double arg = std::arg(ak);
                       double delta = arg - last_arg;
                       delta -= kTwoPi * std::round(delta / kTwoPi);
                       unwrapped += delta;
                       last_arg = arg;
                       last_t = t;
                       report.a1_drift = std::max(report.a1_drift, std::abs(s.coeffs()[0] - a));
                       report.ak_modulus_drift =
                           std::max(report.ak_modulus_drift, std::abs(std::abs(ak) - std::abs(b)));
                     });
  report.measured_rate = unwrapped / last_t;
  return report;
}

}  // namespace filament
