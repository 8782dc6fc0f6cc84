#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "filament/errors.hpp"
#include "filament/invariants.hpp"
#include "filament/random_state.hpp"
#include "filament/waves.hpp"
#include "oracles.hpp"

using namespace filament;

namespace {

StepperConfig config_of(double dt, double t_end) {
  StepperConfig c;
  c.dt = dt;
  c.t_end = t_end;
  return c;
}

}  // namespace

TEST_CASE("make_psi_k and make_two_mode") {
  const auto e1 = make_psi_k(1, Sigma::planar, 3);
  CHECK(e1.mode(1) == Complex(1.0));
  CHECK(e1.mode(2) == Complex{});
  CHECK_THROWS_AS(make_psi_k(0, Sigma::planar, 3), UsageError);
  CHECK_THROWS_AS(make_psi_k(4, Sigma::planar, 3), UsageError);
  CHECK(mass(make_psi_k(4, Sigma::planar, 4)) == doctest::Approx(oracle::kPi / 2.0));

  const auto two = make_two_mode(Complex(1.0, 0.5), Complex(0.0, 2.0), 3, 5);
  CHECK(two.sigma() == Sigma::spherical);
  CHECK(two.mode(1) == Complex(1.0, 0.5));
  CHECK(two.mode(3) == Complex(0.0, 2.0));
  CHECK(two.mode(2) == Complex{});
  CHECK_THROWS_AS(make_two_mode(1.0, 1.0, 1, 5), UsageError);
  CHECK_THROWS_AS(make_two_mode(1.0, 1.0, 6, 5), UsageError);

  const auto reduced = make_two_mode(0.0, Complex(0.3, 0.4), 2, 3);
  CHECK(p_distance(reduced, scaled(make_psi_k(2, Sigma::spherical, 3), Complex(0.3, 0.4))) == 0.0);
}

TEST_CASE("single modes are traveling waves along a one-parameter family") {
  for (Sigma sigma : {Sigma::planar, Sigma::spherical}) {
    for (int k = 1; k <= 6; ++k) {
      const auto psi = make_psi_k(k, sigma, 6);
      const double w = k * (k - to_double(sigma));
      const auto still = wave_residual(psi, 0.0, w);
      CHECK(still.residual < 1e-13);
      CHECK(still.pairing_defect < 1e-12);
      const auto moving = wave_residual(psi, 1.0, k + w);
      CHECK(moving.residual < 1e-13);
      CHECK(moving.pairing_defect < 1e-12);
    }
  }
}

TEST_CASE("two-mode profile is not a wave for generic (c, omega)") {
  const SpectralState s(Sigma::planar, {1.0, 1.0});
  for (double c : {-1.0, 0.0, 2.5}) {
    for (double w : {0.0, 3.0, 7.0}) CHECK(wave_residual(s, c, w).residual > 1e-3);
  }
  // Mode 3 of C is always 1 here, so the residual is at least its P-norm.
  CHECK(wave_residual(s, 0.0, 0.0).residual >= std::sqrt(2.0 * oracle::kPi) - 1e-12);
}

TEST_CASE("stationary scan") {
  CHECK(stationary_scan(SpectralState::zero(Sigma::planar, 4)).stationary);
  CHECK(stationary_scan(SpectralState::zero(Sigma::planar, 4)).in_stationary_set);

  const SpectralState line(Sigma::spherical, {2.5, 0.0, 0.0});
  const auto r = stationary_scan(line);
  CHECK(r.rhs_norm <= 1e-14);
  CHECK(r.stationary);
  CHECK(r.in_stationary_set);

  const auto e2 = stationary_scan(make_psi_k(2, Sigma::spherical, 3));
  CHECK(e2.rhs_norm == doctest::Approx(2.0 * std::sqrt(2.0 * oracle::kPi)));
  CHECK_FALSE(e2.stationary);
  CHECK_FALSE(e2.in_stationary_set);

  // e_1 is not stationary in the planar case.
  CHECK_FALSE(stationary_scan(make_psi_k(1, Sigma::planar, 3)).stationary);
}

TEST_CASE("stationary classification matches the known set on single- and two-mode states") {
  for (Sigma sigma : {Sigma::planar, Sigma::spherical}) {
    for (int k = 1; k <= 4; ++k) {
      for (int l = k; l <= 4; ++l) {
        for (double b : {0.0, 0.5}) {
          CoeffVector a(4);
          a[k - 1] += 1.0;
          a[l - 1] += b;
          const auto report = stationary_scan(SpectralState(sigma, a));
          CHECK(report.stationary == report.in_stationary_set);
        }
      }
    }
  }
}

TEST_CASE("orbit distance is invariant under the symmetry group") {
  const auto psi = make_psi_k(2, Sigma::planar, 5);
  CHECK(orbit_distance(rotate_translate(psi, 1.1, 0.37), psi) < 1e-12);
  const auto s = random_state(Sigma::planar, 5, 3);
  const double d = orbit_distance(s, psi);
  CHECK(d > 0.0);
  CHECK(orbit_distance(rotate_translate(s, -0.4, 2.2), psi) == doctest::Approx(d).epsilon(1e-9));
  // The orbit distance never exceeds the plain distance.
  CHECK(d <= p_distance(s, psi) + 1e-14);
}

TEST_CASE("orbital stability probes") {
  const auto c = config_of(1e-2, 10.0);
  const auto flat = orbital_stability_probe(1, Sigma::spherical, 0.0, 6, c, 1);
  for (const auto& sample : flat) CHECK(sample.orbit_distance < 1e-14);

  const double eps = 1e-2;
  const auto series = orbital_stability_probe(1, Sigma::spherical, eps, 6, c, 1);
  REQUIRE(series.size() == 1001);
  double worst = 0.0;
  for (const auto& sample : series) worst = std::max(worst, sample.orbit_distance);
  CHECK(worst <= 10.0 * eps);
  CHECK(series.front().orbit_distance == doctest::Approx(eps).epsilon(0.5));

  // Planar case: bounded, no growth between the first and last quarter.
  const auto planar = orbital_stability_probe(1, Sigma::planar, eps, 6, c, 2);
  double early = 0.0, late = 0.0;
  const size_t q = planar.size() / 4;
  for (size_t i = 0; i < q; ++i) early = std::max(early, planar[i].orbit_distance);
  for (size_t i = planar.size() - q; i < planar.size(); ++i) late = std::max(late, planar[i].orbit_distance);
  CHECK(late <= 2.0 * early);

  CHECK_THROWS_AS(orbital_stability_probe(3, Sigma::planar, eps, 6, c, 1), UsageError);
  CHECK_THROWS_AS(orbital_stability_probe(1, Sigma::planar, 0.2, 6, c, 1), UsageError);
}

TEST_CASE("two-mode phase probe measures the min-weight rate") {
  const auto r = two_mode_phase_probe(1.0, 1.0, 2, 4, config_of(1e-3, 1.0));
  CHECK(r.derived_rate == 2.0);
  CHECK(r.alternative_rate == 6.0);
  CHECK(std::abs(r.measured_rate - r.derived_rate) <= 1e-6);
  CHECK(r.a1_drift <= 1e-12);
  CHECK(r.ak_modulus_drift <= 1e-10);

  const auto r3 = two_mode_phase_probe(Complex(0.5, 0.5), 0.7, 3, 5, config_of(1e-3, 1.0));
  CHECK(std::abs(r3.measured_rate - 6.0 * 0.49) <= 1e-6);
}
