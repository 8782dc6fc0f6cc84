#include "filament/spectral_state.hpp"

#include <cmath>

#include "filament/errors.hpp"
#include "filament/fourier_grid.hpp"

namespace filament {

Sigma sigma_from_int(int value) {
  if (value == 0) return Sigma::planar;
  if (value == 1) return Sigma::spherical;
  throw UsageError("sigma must be 0 or 1, got " + std::to_string(value));
}

SpectralState::SpectralState(Sigma sigma, CoeffVector coeffs)
    : sigma_(sigma), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw UsageError("SpectralState: n_modes must be >= 1");
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw UsageError("SpectralState: non-finite coefficient");
    }
  }
}

SpectralState SpectralState::zero(Sigma sigma, int n_modes) {
  if (n_modes < 1) throw UsageError("SpectralState: n_modes must be >= 1");
  return SpectralState(sigma, CoeffVector(static_cast<size_t>(n_modes)));
}

Complex SpectralState::mode(int k) const {
  if (k < 1 || k > n_modes()) {
    throw UsageError("SpectralState::mode: k=" + std::to_string(k) + " out of range");
  }
  return coeffs_[static_cast<size_t>(k - 1)];
}

SpectralState SpectralState::with_coeffs(CoeffVector coeffs) const {
  return SpectralState(sigma_, std::move(coeffs));
}

SpectralState SpectralState::with_sigma(Sigma sigma) const { return SpectralState(sigma, coeffs_); }

GridField::GridField(CoeffVector samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw UsageError("GridField: empty sample set");
}

Multiplier Multiplier::q_cutoff(int cutoff) {
  if (cutoff < 0) throw UsageError("q_cutoff: J must be >= 0");
  return Multiplier(Kind::q_cutoff, cutoff);
}

Multiplier Multiplier::parse(const std::string& id) {
  if (id == "lambda") return lambda();
  if (id == "lambda_inv") return lambda_inv();
  if (id == "d_x") return d_x();
  const std::string prefix = "q_cutoff:";
  if (id.rfind(prefix, 0) == 0) {
    try {
      size_t used = 0;
      const int j = std::stoi(id.substr(prefix.size()), &used);
      if (used == id.size() - prefix.size()) return q_cutoff(j);
    } catch (const std::logic_error&) {
    }
  }
  throw UsageError("unknown multiplier '" + id + "'");
}

Complex Multiplier::symbol(int k) const {
  switch (kind_) {
    case Kind::lambda:
      return static_cast<double>(std::abs(k));
    case Kind::lambda_inv:
      if (k == 0) throw UsageError("lambda_inv is undefined on mode 0");
      return 1.0 / std::abs(k);
    case Kind::d_x:
      return Complex(0.0, static_cast<double>(k));
    case Kind::q_cutoff:
      return (k >= 0 && k <= cutoff_) ? 1.0 : 0.0;
  }
  throw InternalError("Multiplier::symbol: bad kind");
}

SpectralState apply_multiplier(const SpectralState& state, const Multiplier& which) {
  CoeffVector out(state.coeffs().begin(), state.coeffs().end());
  for (int k = 1; k <= state.n_modes(); ++k) out[k - 1] *= which.symbol(k);
  return state.with_coeffs(std::move(out));
}

GridField to_grid(const SpectralState& state, int grid_size) {
  if (grid_size < state.n_modes() + 1) {
    throw UsageError("to_grid: grid_size " + std::to_string(grid_size) + " < n_modes + 1");
  }
  FourierGrid grid(grid_size);
  CoeffVector samples(static_cast<size_t>(grid_size));
  grid.synthesize_positive(state.coeffs(), samples);
  return GridField(std::move(samples));
}

SpectralState from_grid(const GridField& field, int n_modes, Sigma sigma) {
  if (n_modes < 1) throw UsageError("from_grid: n_modes must be >= 1");
  if (n_modes >= field.grid_size()) {
    throw UsageError("from_grid: n_modes must be < grid_size");
  }
  FourierGrid grid(field.grid_size());
  CoeffVector bins(static_cast<size_t>(field.grid_size()));
  grid.analyze(field.samples(), bins);
  return SpectralState(sigma, CoeffVector(bins.begin() + 1, bins.begin() + 1 + n_modes));
}

int fft_size(int min_size) {
  if (min_size <= 1) return 1;
  for (int n = min_size;; ++n) {
    int r = n;
    for (int p : {2, 3, 5, 7}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return n;
  }
}

int dealiased_grid_size(int n_modes) { return fft_size(4 * n_modes); }

}  // namespace filament
