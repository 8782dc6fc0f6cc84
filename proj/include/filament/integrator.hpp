#pragma once

#include <functional>
#include <string>
#include <vector>

#include "filament/invariants.hpp"
#include "filament/nonlinearity.hpp"
#include "filament/spectral_state.hpp"

namespace filament {

enum class Scheme { rk4, implicit_midpoint };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme scheme);

struct StepperConfig {
  Scheme scheme = Scheme::rk4;
  double dt = 1e-3;
  double t_end = 1.0;
  int sample_every = 1;
  double midpoint_tol = 1e-14;
  int midpoint_max_iter = 100;
  /// Relaxation factor of the midpoint fixed-point iteration, in (0, 1].
  double midpoint_damping = 1.0;
  std::vector<double> sobolev_exponents;

  /// Throws UsageError on out-of-range fields.
  void validate() const;

  /// Number of steps needed to reach t_end; the last one may be shortened.
  long long step_count() const;
};

/// Right-hand side a_p' = i p [Q^N C_sigma(Q^N u)]_p with reusable buffers.
class FlowRhs {
 public:
  FlowRhs(Sigma sigma, int n_modes);

  void operator()(std::span<const Complex> a, std::span<Complex> out);

  Sigma sigma() const noexcept { return sigma_; }
  int n_modes() const noexcept { return work_.n_modes(); }

 private:
  Sigma sigma_;
  CubicWorkspace work_;
};

SpectralState rhs(const SpectralState& state);

/// Advances coefficient vectors in place with a fixed scheme.
class Stepper {
 public:
  Stepper(Sigma sigma, int n_modes, const StepperConfig& config);

  /// One step of size dt starting at time t (t is only used for failure reports).
  void advance(CoeffVector& a, double dt, double t);

 private:
  void advance_rk4(CoeffVector& a, double dt);
  void advance_midpoint(CoeffVector& a, double dt, double t);

  StepperConfig config_;
  FlowRhs rhs_;
  CoeffVector k1_, k2_, k3_, k4_, stage_, next_, trial_;
};

SpectralState step(const SpectralState& state, const StepperConfig& config);

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralState> states;
  std::vector<InvariantReport> reports;
};

/// Called on every sample; step_index is 0 for the initial state.
using SampleObserver =
    std::function<void(long long step_index, double t, const SpectralState&, const InvariantReport&)>;

/// Integrates to t_end, sampling at t=0, every sample_every steps and at t_end.
/// Streams samples to observer instead of storing them.
void simulate_streaming(const SpectralState& initial, const StepperConfig& config,
                        const SampleObserver& observer);

Trajectory simulate(const SpectralState& initial, const StepperConfig& config);

/// Final state after integrating to config.t_end.
SpectralState evolve(const SpectralState& initial, const StepperConfig& config);

/// Integrate, conjugate, integrate, conjugate; relative P-distance to the start.
double time_reversal_check(const SpectralState& state, const StepperConfig& config);

/// Relative P-distance between evolve(lambda u0) at t/lambda^2 and lambda evolve(u0) at t.
double scaling_check(const SpectralState& state, double lambda, const StepperConfig& config);

}  // namespace filament
