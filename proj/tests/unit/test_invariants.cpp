#include "doctest.h"

#include <cmath>

#include "filament/errors.hpp"
#include "filament/invariants.hpp"
#include "filament/random_state.hpp"
#include "filament/waves.hpp"
#include "oracles.hpp"

using namespace filament;

namespace {

constexpr double kTau = 2.0 * oracle::kPi;

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("frozen quadruple-sum oracle for a = (1, 1)") {
  // Enumerated: sum of min = 7 over 6 quadruples, so E_0 = 28 and E_1 = 4.
  CHECK(oracle::energy_by_enumeration({1.0, 1.0}, 0) == doctest::Approx(28.0));
  CHECK(oracle::energy_by_enumeration({1.0, 1.0}, 1) == doctest::Approx(4.0));
  const SpectralState s0(Sigma::planar, {1.0, 1.0});
  const SpectralState s1(Sigma::spherical, {1.0, 1.0});
  CHECK(std::abs(energy_spectral(s0) - 28.0) < 1e-13);
  CHECK(std::abs(energy_spectral(s1) - 4.0) < 1e-13);
  CHECK(std::abs(energy_lambda_form(s0) - 28.0) < 1e-11);
  CHECK(std::abs(energy_quadrature(s1, 1024) - 4.0) < 1e-5);
}

TEST_CASE("Psi_k table: P = 2 pi, M = 2 pi / k, E = 4 (k - sigma)") {
  for (Sigma sigma : {Sigma::planar, Sigma::spherical}) {
    for (int k = 1; k <= 6; ++k) {
      const auto psi = make_psi_k(k, sigma, 6);
      const double e = 4.0 * (k - to_double(sigma));
      CHECK(std::abs(energy_spectral(psi) - e) < 1e-13);
      CHECK(std::abs(energy_lambda_form(psi) - e) < 1e-11);
      CHECK(std::abs(momentum(psi) - kTau) < 1e-14);
      CHECK(std::abs(mass(psi) - kTau / k) < 1e-14);
    }
  }
  CHECK(std::abs(energy_quadrature(make_psi_k(2, Sigma::planar, 2), 1024) - 8.0) < 1e-5);
  CHECK(std::abs(energy_lambda_form(make_psi_k(1, Sigma::spherical, 3))) < 1e-12);
  CHECK(std::abs(energy_lambda_form(make_psi_k(3, Sigma::planar, 3)) - 12.0) < 1e-11);
  CHECK(std::abs(mass(make_psi_k(4, Sigma::planar, 4)) - oracle::kPi / 2.0) < 1e-14);
}

TEST_CASE("zero state has vanishing invariants") {
  const auto z = SpectralState::zero(Sigma::spherical, 5);
  CHECK(energy_spectral(z) == 0.0);
  CHECK(energy_quadrature(z, 64) == 0.0);
  CHECK(std::abs(energy_lambda_form(z)) == 0.0);
  CHECK(momentum(z) == 0.0);
  CHECK(mass(z) == 0.0);
  CHECK(first_mode(z) == Complex{});
  CHECK(pairing_check(z) == 0.0);
  CHECK(energy_gradient_check(z, 1e-4) < 1e-12);
}

TEST_CASE("energy routes agree with the literal enumeration") {
  for (Sigma sigma : {Sigma::planar, Sigma::spherical}) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto s = random_state(sigma, 9, seed);
      const double ref = oracle::energy_by_enumeration({s.coeffs().begin(), s.coeffs().end()}, to_int(sigma));
      CHECK(rel(energy_spectral(s), ref) < 1e-13);
      CHECK(rel(energy_lambda_form(s), ref) < 1e-11);
      CHECK(rel(energy_quadrature(s, 1024), ref) < 1e-5);
    }
  }
  const auto big = random_state(Sigma::planar, 32, 99);
  CHECK(rel(energy_lambda_form(big), energy_spectral(big)) < 1e-11);
  CHECK_THROWS_AS(energy_quadrature(big, 255), UsageError);
}

TEST_CASE("momentum dominates mass, with equality only on mode 1") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_state(Sigma::planar, 8, seed);
    CHECK(momentum(s) >= mass(s));
    CHECK(mass(s) >= momentum(s) / 8.0);
    CHECK(momentum(s) > mass(s) * (1.0 + 1e-6));
  }
  const SpectralState first(Sigma::planar, {Complex(0.3, -0.4), 0.0, 0.0});
  CHECK(std::abs(momentum(first) - mass(first)) < 1e-15);
}

TEST_CASE("energy is nonnegative and E_1(u) = E_0(shift_down(u))") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s1 = random_state(Sigma::spherical, 11, seed);
    const auto s0 = s1.with_sigma(Sigma::planar);
    CHECK(energy_spectral(s0) >= -1e-12);
    CHECK(energy_spectral(s1) >= -1e-12);
    const double shifted = energy_spectral(shift_down(s1).with_sigma(Sigma::planar));
    CHECK(std::abs(shifted - energy_spectral(s1)) <= 1e-13 * (1.0 + std::abs(shifted)));
  }
}

TEST_CASE("E_1 vanishes only on multiples of e^{ix}") {
  const SpectralState line(Sigma::spherical, {Complex(2.5, 1.0), 0.0, 0.0, 0.0});
  CHECK(std::abs(energy_spectral(line)) < 1e-13);
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const SpectralState bumped(Sigma::spherical, {Complex(2.5, 1.0), 0.0, eps, 0.0});
    CHECK(energy_spectral(bumped) > 0.0);
  }
}

TEST_CASE("quartic homogeneity and phase/translation invariance") {
  const auto s = random_state(Sigma::spherical, 10, 4);
  const double e = energy_spectral(s);
  CHECK(rel(energy_spectral(scaled(s, 1.5)), std::pow(1.5, 4) * e) < 1e-13);
  const auto moved = rotate_translate(s, 0.4, 2.1);
  CHECK(rel(energy_spectral(moved), e) < 1e-13);
  CHECK(rel(momentum(moved), momentum(s)) < 1e-14);
  CHECK(rel(mass(moved), mass(s)) < 1e-14);
  CHECK(std::abs(std::abs(first_mode(moved)) - std::abs(first_mode(s))) < 1e-15);
}

TEST_CASE("pairing identity holds") {
  for (Sigma sigma : {Sigma::planar, Sigma::spherical}) {
    for (int k = 1; k <= 5; ++k) CHECK(pairing_check(make_psi_k(k, sigma, 5)) < 1e-12);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s = random_state(sigma, 16, seed);
      CHECK(pairing_check(s) <= 1e-10 * (1.0 + std::abs(energy_spectral(s))));
    }
  }
}

TEST_CASE("gradient check is second order in h") {
  CHECK(energy_gradient_check(make_psi_k(2, Sigma::planar, 4), 1e-4) <= 1e-6);
  const auto s = random_state(Sigma::planar, 16, 8);
  const double r1 = energy_gradient_check(s, 1e-3);
  const double r2 = energy_gradient_check(s, 5e-4);
  CHECK(r2 > 0.0);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
  CHECK_THROWS_AS(energy_gradient_check(s, 2e-3), UsageError);
}

TEST_CASE("sobolev norms") {
  CHECK(std::abs(sobolev_norm(make_psi_k(3, Sigma::planar, 3), 0.0) - std::sqrt(kTau)) < 1e-14);
  CHECK(std::abs(sobolev_norm(make_psi_k(2, Sigma::planar, 2), 1.0) - 2.0 * std::sqrt(kTau)) < 1e-14);
  const SpectralState s(Sigma::planar, {1.0, 1.0});
  CHECK(std::abs(sobolev_norm(s, 1.5) - std::sqrt(kTau * 9.0)) < 1e-13);
  CHECK_THROWS_AS(sobolev_norm(s, -2.0), UsageError);
}

TEST_CASE("report bundles all diagnostics") {
  const SpectralState s(Sigma::spherical, {Complex(1.0, 2.0), 1.0});
  const double exps[] = {0.5, 1.5};
  const auto r = make_report(s, exps);
  CHECK(r.a1 == Complex(1.0, 2.0));
  CHECK(r.h_s_norms.size() == 2);
  CHECK(r.momentum == doctest::Approx(kTau * 6.0));
  CHECK(r.mass == doctest::Approx(kTau * 5.5));
}
