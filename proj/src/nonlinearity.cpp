#include "filament/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "filament/errors.hpp"

namespace filament {

namespace {

int full_length(int n_modes) { return 2 * n_modes - 1; }

template <class Weight>
NonlinearityResult triple_sum(const SpectralState& state, Weight weight) {
  const int n = state.n_modes();
  const auto a = state.coeffs();
  const double sigma = to_double(state.sigma());
  CoeffVector out(static_cast<size_t>(full_length(n)));
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= n; ++l) {
      const Complex akl = a[k - 1] * a[l - 1];
      if (akl == Complex{}) continue;
      for (int m = 1; m <= n; ++m) {
        const int p = k + l - m;
        if (p < 1) continue;
        out[p - 1] += (weight(k, l, m, p) - sigma) * akl * std::conj(a[m - 1]);
      }
    }
  }
  return NonlinearityResult(n, std::move(out));
}

}  // namespace

NonlinearityResult::NonlinearityResult(int n_modes, CoeffVector coeffs_full)
    : n_modes_(n_modes), full_(std::move(coeffs_full)) {
  if (n_modes < 1 || static_cast<int>(full_.size()) != full_length(n_modes)) {
    throw InternalError("NonlinearityResult: expected 2N-1 coefficients");
  }
}

NonlinearityResult c_sigma_direct(const SpectralState& state) {
  return triple_sum(state, [](int k, int l, int m, int p) {
    return static_cast<double>(std::min(std::min(k, l), std::min(m, p)));
  });
}

NonlinearityResult c_sigma_unsym(const SpectralState& state) {
  return triple_sum(state, [](int k, int, int, int p) {
    return static_cast<double>(k - std::abs(k - p));
  });
}

CubicWorkspace::CubicWorkspace(int n_modes)
    : n_modes_(n_modes), grid_(dealiased_grid_size(std::max(n_modes, 1))) {
  if (n_modes < 1) throw UsageError("CubicWorkspace: n_modes must be >= 1");
  const auto m = static_cast<size_t>(grid_.size());
  u_.resize(m);
  lambda_u_.resize(m);
  density_.resize(m);
  lambda_density_.resize(m);
  bins_.resize(m);
}

void CubicWorkspace::planar_cubic(std::span<const Complex> coeffs, std::span<Complex> out) {
  const int n = static_cast<int>(coeffs.size());
  const int m = grid_.size();
  const FourierGrid& grid = grid_;
  std::fill(out.begin(), out.end(), Complex{});
  if (n == 0) return;

  grid.synthesize_positive(coeffs, u_);
  for (int k = 1; k <= n; ++k) bins_[k - 1] = static_cast<double>(k) * coeffs[k - 1];
  grid.synthesize_positive(std::span<const Complex>(bins_).first(static_cast<size_t>(n)),
                           lambda_u_);

  for (int j = 0; j < m; ++j) density_[j] = std::norm(u_[j]);
  grid.analyze(density_, bins_);
  for (int b = 0; b < m; ++b) bins_[b] *= static_cast<double>(std::abs(grid.signed_mode(b)));
  grid.synthesize(bins_, lambda_density_);

  for (int j = 0; j < m; ++j) {
    // Reuse lambda_u_ as the pointwise result.
    lambda_u_[j] = density_[j].real() * lambda_u_[j] - u_[j] * lambda_density_[j].real();
  }
  grid.analyze(lambda_u_, bins_);
  const auto used = std::min(out.size(), static_cast<size_t>(full_length(n)));
  std::copy_n(bins_.begin() + 1, used, out.begin());
}

void c_sigma_fast_into(Sigma sigma, std::span<const Complex> coeffs, CubicWorkspace& work,
                       std::span<Complex> out) {
  const int n = static_cast<int>(coeffs.size());
  if (n != work.n_modes_ || work.grid_.size() < 4 * n ||
      static_cast<int>(out.size()) > full_length(n)) {
    throw InternalError("c_sigma_fast: workspace does not match state");
  }
  if (sigma == Sigma::planar) {
    work.planar_cubic(coeffs, out);
    return;
  }
  // Every term touching mode 1 has weight min - 1 = 0, so C_1(u) is C_0 of the
  // state shifted down one mode, shifted back up. Evaluating it this way keeps
  // a_1 out of the grid products, where it would otherwise cancel in
  // |u|^2 Lambda u - |u|^2 u and cost several digits.
  if (out.empty()) return;
  out[0] = Complex{};
  work.planar_cubic(coeffs.subspan(1), out.subspan(1));
}

NonlinearityResult c_sigma_fast(const SpectralState& state, CubicWorkspace& work) {
  CoeffVector out(static_cast<size_t>(full_length(state.n_modes())));
  c_sigma_fast_into(state.sigma(), state.coeffs(), work, out);
  return NonlinearityResult(state.n_modes(), std::move(out));
}

NonlinearityResult c_sigma_fast(const SpectralState& state) {
  CubicWorkspace work(state.n_modes());
  return c_sigma_fast(state, work);
}

int smallest_divisor_at_least(int n, int lower) {
  for (int d = std::max(lower, 1); d < n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

CoeffVector synthesize_half_shifted(std::span<const Complex> coeffs, int n) {
  CoeffVector shifted(coeffs.size());
  for (size_t k = 1; k <= coeffs.size(); ++k) {
    shifted[k - 1] = coeffs[k - 1] * std::polar(1.0, -kPi * static_cast<double>(k) / n);
  }
  FourierGrid grid(n);
  CoeffVector samples(static_cast<size_t>(n));
  grid.synthesize_positive(shifted, samples);
  return samples;
}

NonlinearityResult c_sigma_quadrature(const SpectralState& state, int n_quad) {
  const int n = state.n_modes();
  if (n_quad < 8 * n) {
    throw UsageError("c_sigma_quadrature: n_quad must be >= 8 * n_modes");
  }
  // x-grid must resolve modes 2-N..2N-1 without aliasing and must divide n_quad
  // so that x_i - z_j lands on the half-shifted fine grid.
  const int mx = smallest_divisor_at_least(n_quad, 4 * n);
  const int stride = n_quad / mx;
  const CoeffVector fine = synthesize_half_shifted(state.coeffs(), n_quad);

  FourierGrid grid(mx);
  CoeffVector ux(static_cast<size_t>(mx));
  grid.synthesize_positive(state.coeffs(), ux);

  std::vector<double> inv_kernel(static_cast<size_t>(n_quad));
  for (int j = 0; j < n_quad; ++j) {
    const double z = (j + 0.5) * kTwoPi / n_quad;
    inv_kernel[j] = 1.0 / (1.0 - std::cos(z));
  }

  const double sigma = to_double(state.sigma());
  const double weight = (kTwoPi / n_quad) / (4.0 * kPi);
  CoeffVector values(static_cast<size_t>(mx));
  for (int i = 0; i < mx; ++i) {
    const Complex u = ux[i];
    Complex acc{};
    const int base = i * stride;
    for (int j = 0; j < n_quad; ++j) {
      int idx = base - j;
      if (idx < 0) idx += n_quad;
      const Complex d = u - fine[idx];
      acc += (std::norm(d) * inv_kernel[j]) * d;
    }
    values[i] = weight * acc - sigma * std::norm(u) * u;
  }

  CoeffVector bins(static_cast<size_t>(mx));
  grid.analyze(values, bins);
  return NonlinearityResult(n, CoeffVector(bins.begin() + 1, bins.begin() + full_length(n) + 1));
}

double kernel_integral(int m, int n_quad) {
  if (n_quad < 64) throw UsageError("kernel_integral: n_quad must be >= 64");
  double acc = 0.0;
  for (int j = 0; j < n_quad; ++j) {
    const double z = (j + 0.5) * kTwoPi / n_quad;
    acc += (1.0 - std::cos(m * z)) / (1.0 - std::cos(z));
  }
  return acc * kTwoPi / n_quad;
}

}  // namespace filament
