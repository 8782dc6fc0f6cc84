#include "filament/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "filament/errors.hpp"

namespace filament {

Scheme parse_scheme(const std::string& name) {
  if (name == "rk4") return Scheme::rk4;
  if (name == "midpoint" || name == "implicit_midpoint") return Scheme::implicit_midpoint;
  throw UsageError("unknown scheme '" + name + "' (expected rk4 or midpoint)");
}

std::string to_string(Scheme scheme) {
  return scheme == Scheme::rk4 ? "rk4" : "midpoint";
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw UsageError("dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw UsageError("t_end must be positive");
  if (dt > t_end) throw UsageError("dt must not exceed t_end");
  if (sample_every < 1) throw UsageError("sample_every must be >= 1");
  if (!(midpoint_tol >= 1e-15)) throw UsageError("midpoint_tol must be >= 1e-15");
  if (midpoint_max_iter < 1) throw UsageError("midpoint_max_iter must be >= 1");
  if (!(midpoint_damping > 0.0 && midpoint_damping <= 1.0)) {
    throw UsageError("midpoint_damping must lie in (0, 1]");
  }
  for (double s : sobolev_exponents) {
    if (!(s >= -1.0)) throw UsageError("Sobolev exponents must be >= -1");
  }
}

long long StepperConfig::step_count() const {
  const double ratio = t_end / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return std::max(1LL, static_cast<long long>(nearest));
  }
  return static_cast<long long>(std::ceil(ratio));
}

FlowRhs::FlowRhs(Sigma sigma, int n_modes) : sigma_(sigma), work_(n_modes) {}

void FlowRhs::operator()(std::span<const Complex> a, std::span<Complex> out) {
  c_sigma_fast_into(sigma_, a, work_, out);
  for (size_t p = 1; p <= out.size(); ++p) {
    out[p - 1] *= Complex(0.0, static_cast<double>(p));
  }
}

SpectralState rhs(const SpectralState& state) {
  FlowRhs f(state.sigma(), state.n_modes());
  CoeffVector out(static_cast<size_t>(state.n_modes()));
  f(state.coeffs(), out);
  return state.with_coeffs(std::move(out));
}

Stepper::Stepper(Sigma sigma, int n_modes, const StepperConfig& config)
    : config_(config), rhs_(sigma, n_modes) {
  const auto n = static_cast<size_t>(n_modes);
  for (CoeffVector* v : {&k1_, &k2_, &k3_, &k4_, &stage_, &next_, &trial_}) v->resize(n);
}

void Stepper::advance(CoeffVector& a, double dt, double t) {
  if (config_.scheme == Scheme::rk4) {
    advance_rk4(a, dt);
  } else {
    advance_midpoint(a, dt, t);
  }
  for (const Complex& c : a) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw NumericalError("non-finite coefficients after the step at t = " + std::to_string(t));
    }
  }
}

void Stepper::advance_rk4(CoeffVector& a, double dt) {
  const size_t n = a.size();
  rhs_(a, k1_);
  for (size_t i = 0; i < n; ++i) stage_[i] = a[i] + 0.5 * dt * k1_[i];
  rhs_(stage_, k2_);
  for (size_t i = 0; i < n; ++i) stage_[i] = a[i] + 0.5 * dt * k2_[i];
  rhs_(stage_, k3_);
  for (size_t i = 0; i < n; ++i) stage_[i] = a[i] + dt * k3_[i];
  rhs_(stage_, k4_);
  for (size_t i = 0; i < n; ++i) {
    a[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }
}

// Solves a' = a + dt f((a + a')/2) by relaxed fixed-point iteration, seeded
// with an explicit Euler predictor.
void Stepper::advance_midpoint(CoeffVector& a, double dt, double t) {
  const size_t n = a.size();
  const double theta = config_.midpoint_damping;
  rhs_(a, k1_);
  for (size_t i = 0; i < n; ++i) next_[i] = a[i] + dt * k1_[i];

  double scale = 1.0;
  for (const Complex& c : a) scale = std::max(scale, std::abs(c));

  double residual = 0.0;
  for (int iter = 1; iter <= config_.midpoint_max_iter; ++iter) {
    for (size_t i = 0; i < n; ++i) stage_[i] = 0.5 * (a[i] + next_[i]);
    rhs_(stage_, k1_);
    residual = 0.0;
    for (size_t i = 0; i < n; ++i) {
      trial_[i] = a[i] + dt * k1_[i];
      residual = std::max(residual, std::abs(trial_[i] - next_[i]));
      next_[i] += theta * (trial_[i] - next_[i]);
    }
    residual /= scale;
    // std::max drops NaNs, so a diverging iteration must be caught explicitly.
    if (!std::isfinite(p_norm(next_))) throw StepFailure(t, iter, std::numeric_limits<double>::infinity());
    if (residual <= config_.midpoint_tol) {
      a.swap(next_);
      return;
    }
  }
  throw StepFailure(t, config_.midpoint_max_iter, residual);
}

SpectralState step(const SpectralState& state, const StepperConfig& config) {
  if (!(config.dt > 0.0)) throw UsageError("dt must be positive");
  Stepper stepper(state.sigma(), state.n_modes(), config);
  CoeffVector a(state.coeffs().begin(), state.coeffs().end());
  stepper.advance(a, config.dt, 0.0);
  return state.with_coeffs(std::move(a));
}

void simulate_streaming(const SpectralState& initial, const StepperConfig& config,
                        const SampleObserver& observer) {
  config.validate();
  Stepper stepper(initial.sigma(), initial.n_modes(), config);
  CoeffVector a(initial.coeffs().begin(), initial.coeffs().end());

  observer(0, 0.0, initial, make_report(initial, config.sobolev_exponents));

  const long long steps = config.step_count();
  double t = 0.0;
  for (long long i = 1; i <= steps; ++i) {
    const double t_next = (i == steps) ? config.t_end : static_cast<double>(i) * config.dt;
    stepper.advance(a, t_next - t, t);
    t = t_next;
    if (i % config.sample_every == 0 || i == steps) {
      const SpectralState current = initial.with_coeffs(a);
      observer(i, t, current, make_report(current, config.sobolev_exponents));
    }
  }
}

Trajectory simulate(const SpectralState& initial, const StepperConfig& config) {
  Trajectory out;
  simulate_streaming(initial, config,
                     [&](long long, double t, const SpectralState& s, const InvariantReport& r) {
                       out.times.push_back(t);
                       out.states.push_back(s);
                       out.reports.push_back(r);
                     });
  return out;
}

SpectralState evolve(const SpectralState& initial, const StepperConfig& config) {
  config.validate();
  Stepper stepper(initial.sigma(), initial.n_modes(), config);
  CoeffVector a(initial.coeffs().begin(), initial.coeffs().end());
  const long long steps = config.step_count();
  double t = 0.0;
  for (long long i = 1; i <= steps; ++i) {
    const double t_next = (i == steps) ? config.t_end : static_cast<double>(i) * config.dt;
    stepper.advance(a, t_next - t, t);
    t = t_next;
  }
  return initial.with_coeffs(std::move(a));
}

namespace {

SpectralState conjugated(const SpectralState& state) {
  CoeffVector out(state.coeffs().begin(), state.coeffs().end());
  for (Complex& c : out) c = std::conj(c);
  return state.with_coeffs(std::move(out));
}

double relative_distance(const SpectralState& got, const SpectralState& want) {
  const double norm = p_norm(want.coeffs());
  const double dist = p_distance(got, want);
  return norm > 0.0 ? dist / norm : dist;
}

}  // namespace

double time_reversal_check(const SpectralState& state, const StepperConfig& config) {
  const SpectralState forward = evolve(state, config);
  const SpectralState back = evolve(conjugated(forward), config);
  return relative_distance(conjugated(back), state);
}

double scaling_check(const SpectralState& state, double lambda, const StepperConfig& config) {
  if (!(lambda > 0.0)) throw UsageError("scaling_check: lambda must be positive");
  StepperConfig stretched = config;
  stretched.t_end = config.t_end / (lambda * lambda);
  if (stretched.dt > stretched.t_end) stretched.dt = stretched.t_end;
  const SpectralState lhs = evolve(scaled(state, lambda), stretched);
  const SpectralState rhs_state = scaled(evolve(state, config), lambda);
  return relative_distance(lhs, rhs_state);
}

}  // namespace filament
