#pragma once

#include <cstdint>
#include <string>

#include "filament/spectral_state.hpp"

namespace filament {

struct RandomStateOptions {
  /// Coefficients decay like k^{-decay}.
  double decay = 2.0;
  /// Overall multiplier applied after drawing.
  double amplitude = 1.0;
  /// When positive, the drawn state is rescaled to this P-norm instead
  /// (amplitude is then ignored).
  double p_norm = 0.0;
};

/// a_k = amplitude * g_k / k^decay with g_k standard complex Gaussian
/// (unit variance), drawn from a 64-bit Mersenne Twister seeded with seed.
SpectralState random_state(Sigma sigma, int n_modes, std::uint64_t seed,
                           const RandomStateOptions& options = {});

/// Parses "decay=<d>,amplitude=<a>,p_norm=<r>" (any subset, any order).
RandomStateOptions parse_random_options(const std::string& spec);

/// Standard complex Gaussian direction on modes 1..N normalized to unit P-norm.
CoeffVector random_unit_direction(int n_modes, std::uint64_t seed);

}  // namespace filament
