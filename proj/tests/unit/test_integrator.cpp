#include "doctest.h"

#include <cmath>

#include "filament/errors.hpp"
#include "filament/integrator.hpp"
#include "filament/random_state.hpp"
#include "filament/waves.hpp"
#include "oracles.hpp"

using namespace filament;

namespace {

StepperConfig config_of(double dt, double t_end, Scheme scheme = Scheme::rk4) {
  StepperConfig c;
  c.scheme = scheme;
  c.dt = dt;
  c.t_end = t_end;
  return c;
}

double rel_drift(double now, double then) { return std::abs(now - then) / std::abs(then); }

SpectralState unit_state(Sigma sigma, int n, std::uint64_t seed, double p = 1.0) {
  RandomStateOptions o;
  o.p_norm = p;
  return random_state(sigma, n, seed, o);
}

}  // namespace

TEST_CASE("rhs examples") {
  // a = (1, 1), sigma = 0: C = (3, 4, ...), so a' = (i 1 3, i 2 4).
  const auto r = rhs(SpectralState(Sigma::planar, {1.0, 1.0}));
  CHECK(std::abs(r.mode(1) - Complex(0.0, 3.0)) < 1e-13);
  CHECK(std::abs(r.mode(2) - Complex(0.0, 8.0)) < 1e-13);

  for (Sigma sigma : {Sigma::planar, Sigma::spherical}) {
    for (int k = 1; k <= 5; ++k) {
      const auto d = rhs(make_psi_k(k, sigma, 5));
      const double w = k * (k - to_double(sigma));
      for (int p = 1; p <= 5; ++p) {
        CHECK(std::abs(d.mode(p) - (p == k ? Complex(0.0, w) : Complex{})) < 1e-13);
      }
    }
  }
  const auto z = rhs(SpectralState::zero(Sigma::planar, 4));
  for (const Complex& c : z.coeffs()) CHECK(c == Complex{});
}

TEST_CASE("rhs matches the enumerated flow") {
  for (Sigma sigma : {Sigma::planar, Sigma::spherical}) {
    const auto s = random_state(sigma, 9, 21);
    const auto want = oracle::flow_by_enumeration({s.coeffs().begin(), s.coeffs().end()}, to_int(sigma));
    const auto got = rhs(s);
    for (int p = 1; p <= 9; ++p) CHECK(std::abs(got.mode(p) - want[p - 1]) < 1e-13);
  }
}

TEST_CASE("rk4 reproduces the enumerated rk4 step for step") {
  for (Sigma sigma : {Sigma::planar, Sigma::spherical}) {
    const auto s = random_state(sigma, 5, 8);
    const auto got = evolve(s, config_of(1e-2, 0.5));
    const auto want = oracle::rk4_by_enumeration({s.coeffs().begin(), s.coeffs().end()}, to_int(sigma), 1e-2, 50);
    for (int p = 1; p <= 5; ++p) CHECK(std::abs(got.mode(p) - want[p - 1]) < 1e-13);
  }
}

TEST_CASE("Psi_k rotates at rate k(k - sigma) with unit modulus") {
  const auto s = make_psi_k(3, Sigma::planar, 3);
  const auto f = evolve(s, config_of(1e-3, 1.0));
  CHECK(std::abs(f.mode(3) - std::polar(1.0, 9.0)) < 1e-8);
  CHECK(std::abs(std::abs(f.mode(3)) - 1.0) < 1e-10);
  CHECK(std::abs(f.mode(1)) == 0.0);

  const auto m = evolve(make_psi_k(2, Sigma::spherical, 4), config_of(1e-3, 1.0, Scheme::implicit_midpoint));
  CHECK(std::abs(std::abs(m.mode(2)) - 1.0) < 1e-13);
  CHECK(std::abs(m.mode(2) - std::polar(1.0, 2.0)) < 1e-5);
}

TEST_CASE("zero state and c e_1 at sigma = 1 are fixed points") {
  const auto z = SpectralState::zero(Sigma::planar, 6);
  const auto zf = evolve(z, config_of(1e-2, 1.0));
  for (const Complex& c : zf.coeffs()) CHECK(c == Complex{});

  const SpectralState line(Sigma::spherical, {Complex(0.6, -1.1), 0.0, 0.0});
  const auto lf = evolve(line, config_of(1e-2, 1.0));
  CHECK(lf.mode(1) == Complex(0.6, -1.1));
}

TEST_CASE("rk4 conserves E, P, M and a_1 for sigma = 1") {
  for (Sigma sigma : {Sigma::planar, Sigma::spherical}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto s = unit_state(sigma, 16, seed);
      const auto traj = simulate(s, config_of(1e-3, 1.0));
      const auto& first = traj.reports.front();
      const auto& last = traj.reports.back();
      CHECK(rel_drift(last.energy, first.energy) <= 1e-8);
      CHECK(rel_drift(last.momentum, first.momentum) <= 1e-8);
      CHECK(rel_drift(last.mass, first.mass) <= 1e-8);
      if (sigma == Sigma::spherical) CHECK(std::abs(last.a1 - first.a1) <= 1e-10);
    }
  }
}

TEST_CASE("implicit midpoint: P and M to roundoff, E at second order") {
  const auto s = unit_state(Sigma::planar, 16, 3);
  const auto coarse = evolve(s, config_of(1e-3, 1.0, Scheme::implicit_midpoint));
  const auto fine = evolve(s, config_of(5e-4, 1.0, Scheme::implicit_midpoint));
  CHECK(rel_drift(momentum(coarse), momentum(s)) <= 1e-12);
  CHECK(rel_drift(mass(coarse), mass(s)) <= 1e-12);
  const double e0 = energy_spectral(s);
  const double ratio = std::abs(energy_spectral(coarse) - e0) / std::abs(energy_spectral(fine) - e0);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));

  const auto small = unit_state(Sigma::planar, 16, 3, 0.1);
  const auto sf = evolve(small, config_of(1e-3, 1.0, Scheme::implicit_midpoint));
  CHECK(rel_drift(energy_spectral(sf), energy_spectral(small)) <= 1e-8);
  CHECK(rel_drift(momentum(sf), momentum(small)) <= 1e-12);
}

TEST_CASE("midpoint solver failure is reported with time and residual") {
  auto c = config_of(1e-2, 1.0, Scheme::implicit_midpoint);
  c.midpoint_max_iter = 1;
  const auto s = unit_state(Sigma::planar, 8, 2);
  try {
    evolve(s, c);
    FAIL("expected StepFailure");
  } catch (const StepFailure& e) {
    CHECK(e.time() == 0.0);
    CHECK(e.iterations() == 1);
    CHECK(e.residual() > c.midpoint_tol);
  }
}

TEST_CASE("blow-up to non-finite values is a numerical error") {
  RandomStateOptions o;
  o.amplitude = 1e6;
  const auto s = random_state(Sigma::planar, 8, 1, o);
  CHECK_THROWS_AS(evolve(s, config_of(0.5, 10.0)), NumericalError);
}

TEST_CASE("time reversal with conjugation and scaling are fourth-order accurate") {
  const auto s = unit_state(Sigma::planar, 8, 1, 1.5);
  const double tr1 = time_reversal_check(s, config_of(1e-3, 1.0));
  const double tr2 = time_reversal_check(s, config_of(5e-4, 1.0));
  CHECK(tr1 <= 1e-8);
  CHECK(std::log2(tr1 / tr2) >= 3.5);

  const double sc1 = scaling_check(s, 0.5, config_of(1e-3, 1.0));
  const double sc2 = scaling_check(s, 0.5, config_of(5e-4, 1.0));
  CHECK(sc1 <= 1e-8);
  CHECK(std::log2(sc1 / sc2) == doctest::Approx(4.0).epsilon(0.1));
  CHECK_THROWS_AS(scaling_check(s, 0.0, config_of(1e-3, 1.0)), UsageError);
}

TEST_CASE("sampling includes t = 0, every sample_every steps and t_end") {
  auto c = config_of(0.1, 1.05);
  c.sample_every = 4;
  c.sobolev_exponents = {1.0};
  const auto traj = simulate(make_psi_k(1, Sigma::planar, 2), c);
  REQUIRE(traj.times.size() == 4);
  CHECK(traj.times[0] == 0.0);
  CHECK(traj.times[1] == doctest::Approx(0.4));
  CHECK(traj.times[2] == doctest::Approx(0.8));
  CHECK(traj.times[3] == 1.05);
  CHECK(traj.reports[3].h_s_norms.at(1.0) == doctest::Approx(std::sqrt(2.0 * oracle::kPi)));
  CHECK(c.step_count() == 11);
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(config_of(0.0, 1.0).validate(), UsageError);
  CHECK_THROWS_AS(config_of(2.0, 1.0).validate(), UsageError);
  auto c = config_of(1e-3, 1.0);
  c.midpoint_damping = 1.5;
  CHECK_THROWS_AS(c.validate(), UsageError);
  CHECK(parse_scheme("midpoint") == Scheme::implicit_midpoint);
  CHECK_THROWS_AS(parse_scheme("euler"), UsageError);
  CHECK(config_of(1e-3, 1.0).step_count() == 1000);
}
