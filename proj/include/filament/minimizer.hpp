#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "filament/random_state.hpp"
#include "filament/spectral_state.hpp"

namespace filament {

enum class ConstraintMode { both, mass_only, momentum_only };

ConstraintMode parse_constraint_mode(const std::string& name);
std::string to_string(ConstraintMode mode);

/// Prescribed mass M* and momentum P* of the constrained minimization.
struct ConstraintTarget {
  double mass_target = 0.0;
  double momentum_target = 0.0;
  ConstraintMode mode = ConstraintMode::both;

  /// On modes 1..N, P/N <= M <= P; targets outside that range are rejected.
  void validate(int n_modes) const;
};

/// Nearest point in the P-metric on the constraint set, of the form
/// b_k = a_k / (1 + alpha + beta / k). Single-constraint modes rescale.
SpectralState project_to_constraints(const SpectralState& state, const ConstraintTarget& target);

/// Relative violations (|M - M*| / M*, |P - P*| / P*); unconstrained entries are 0.
std::array<double, 2> constraint_violation(const SpectralState& state, const ConstraintTarget& target);

struct MultiplierFit {
  double lambda = 0.0;
  double mu = 0.0;
  double el_residual = 0.0;
};

/// Real least-squares fit of (4/pi) C_p = lambda a_p / p + mu a_p over p = 1..N.
/// Rank-deficient systems return the minimal-norm solution.
MultiplierFit multiplier_extraction(const SpectralState& state);

/// Rotates the phase so the lowest occupied mode is real and positive.
SpectralState gauge_fixed(const SpectralState& state);

struct MinimizerOptions {
  /// Stop once the P-norm of the projected gradient drops below tol.
  double tol = 1e-9;
  int max_iter = 20000;
  double armijo = 1e-4;
  int max_backtracks = 60;
  std::uint64_t seed = 1;
  RandomStateOptions random_init{};
};

struct MinimizerResult {
  SpectralState state;
  double lambda = 0.0;
  double mu = 0.0;
  double el_residual = 0.0;
  std::array<double, 2> constraint_violation{};
  double energy = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  std::uint64_t seed = 0;
  /// Energy after each accepted iterate, starting with the projected initial state.
  std::vector<double> energy_history;
};

/// Projected gradient descent with Armijo backtracking (Barzilai-Borwein trial steps).
/// Starts from init when given, otherwise from a seeded random state.
MinimizerResult minimize_energy(Sigma sigma, int n_modes, const ConstraintTarget& target,
                                const std::optional<SpectralState>& init,
                                const MinimizerOptions& options);

/// Runs one descent per seed concurrently and keeps the lowest energy.
MinimizerResult minimize_multistart(Sigma sigma, int n_modes, const ConstraintTarget& target,
                                    std::span<const std::uint64_t> seeds,
                                    const MinimizerOptions& options);

}  // namespace filament
