#include "filament/random_state.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "filament/errors.hpp"
#include "filament/invariants.hpp"

namespace filament {

namespace {

CoeffVector gaussian_coeffs(int n_modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CoeffVector out(static_cast<size_t>(n_modes));
  for (Complex& c : out) {
    const double re = normal(rng);
    const double im = normal(rng);
    c = Complex(re, im);
  }
  return out;
}

}  // namespace

SpectralState random_state(Sigma sigma, int n_modes, std::uint64_t seed,
                           const RandomStateOptions& options) {
  if (n_modes < 1) throw UsageError("random_state: n_modes must be >= 1");
  if (!(options.decay >= 0.0)) throw UsageError("random_state: decay must be >= 0");
  if (!std::isfinite(options.amplitude) || !(options.p_norm >= 0.0) || !std::isfinite(options.p_norm)) {
    throw UsageError("random_state: amplitude and p_norm must be finite, p_norm >= 0");
  }
  CoeffVector a = gaussian_coeffs(n_modes, seed);
  for (int k = 1; k <= n_modes; ++k) a[k - 1] *= std::pow(static_cast<double>(k), -options.decay);
  const double factor = options.p_norm > 0.0 ? options.p_norm / p_norm(a) : options.amplitude;
  for (Complex& c : a) c *= factor;
  return SpectralState(sigma, std::move(a));
}

RandomStateOptions parse_random_options(const std::string& spec) {
  RandomStateOptions options;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    const std::size_t end = std::min(spec.find(',', pos), spec.size());
    const std::string item = spec.substr(pos, end - pos);
    pos = end + 1;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("random options: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("random options: bad number in '" + item + "'");
    }
    if (key == "decay") {
      options.decay = value;
    } else if (key == "amplitude") {
      options.amplitude = value;
    } else if (key == "p_norm") {
      options.p_norm = value;
    } else {
      throw UsageError("random options: unknown key '" + key + "'");
    }
  }
  return options;
}

CoeffVector random_unit_direction(int n_modes, std::uint64_t seed) {
  if (n_modes < 1) throw UsageError("random_unit_direction: n_modes must be >= 1");
  CoeffVector d = gaussian_coeffs(n_modes, seed);
  const double norm = p_norm(d);
  for (Complex& c : d) c /= norm;
  return d;
}

}  // namespace filament
