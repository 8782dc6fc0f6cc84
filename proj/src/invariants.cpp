#include "filament/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "filament/errors.hpp"
#include "filament/fourier_grid.hpp"
#include "filament/nonlinearity.hpp"

namespace filament {

double energy_spectral(const SpectralState& state) {
  const int n = state.n_modes();
  const auto a = state.coeffs();
  const double sigma = to_double(state.sigma());
  Complex sum{};
  double magnitude = 0.0;
  for (int k = 1; k <= n; ++k) {
    for (int l = 1; l <= n; ++l) {
      const Complex akl = a[k - 1] * a[l - 1];
      if (akl == Complex{}) continue;
      const int kl_min = std::min(k, l);
      // m ranges so that the partner index q = k + l - m stays in 1..n.
      const int m_lo = std::max(1, k + l - n);
      const int m_hi = std::min(n, k + l - 1);
      for (int m = m_lo; m <= m_hi; ++m) {
        const int q = k + l - m;
        const double w = std::min(kl_min, std::min(m, q)) - sigma;
        const Complex term = w * akl * std::conj(a[m - 1] * a[q - 1]);
        sum += term;
        magnitude += std::abs(term);
      }
    }
  }
  if (std::abs(sum.imag()) > 1e-12 * (1.0 + magnitude)) {
    throw InternalError("energy_spectral: quartic form lost Hermitian symmetry");
  }
  return 4.0 * sum.real();
}

double energy_quadrature(const SpectralState& state, int n_quad) {
  const int n = state.n_modes();
  if (n_quad < 8 * n) throw UsageError("energy_quadrature: n_quad must be >= 8 * n_modes");
  const int mx = smallest_divisor_at_least(n_quad, 4 * n);
  const int stride = n_quad / mx;
  const CoeffVector fine = synthesize_half_shifted(state.coeffs(), n_quad);

  FourierGrid grid(mx);
  CoeffVector ux(static_cast<size_t>(mx));
  grid.synthesize_positive(state.coeffs(), ux);

  std::vector<double> inv_kernel(static_cast<size_t>(n_quad));
  for (int j = 0; j < n_quad; ++j) {
    inv_kernel[j] = 1.0 / (1.0 - std::cos((j + 0.5) * kTwoPi / n_quad));
  }

  double gagliardo = 0.0;
  double l4 = 0.0;
  for (int i = 0; i < mx; ++i) {
    const Complex u = ux[i];
    const int base = i * stride;
    double acc = 0.0;
    for (int j = 0; j < n_quad; ++j) {
      int idx = base - j;
      if (idx < 0) idx += n_quad;
      const double d2 = std::norm(u - fine[idx]);
      acc += d2 * d2 * inv_kernel[j];
    }
    gagliardo += acc;
    const double rho = std::norm(u);
    l4 += rho * rho;
  }
  gagliardo *= (kTwoPi / mx) * (kTwoPi / n_quad);
  l4 *= kTwoPi / mx;
  return gagliardo / (4.0 * kPi * kPi) - 2.0 * to_double(state.sigma()) / kPi * l4;
}

double energy_lambda_form(const SpectralState& state) {
  const int n = state.n_modes();
  FourierGrid grid(dealiased_grid_size(n));
  const int m = grid.size();
  CoeffVector u(static_cast<size_t>(m)), lambda_u(static_cast<size_t>(m));
  CoeffVector density(static_cast<size_t>(m)), bins(static_cast<size_t>(m));
  CoeffVector lambda_density(static_cast<size_t>(m));

  grid.synthesize_positive(state.coeffs(), u);
  CoeffVector weighted(state.coeffs().begin(), state.coeffs().end());
  for (int k = 1; k <= n; ++k) weighted[k - 1] *= static_cast<double>(k);
  grid.synthesize_positive(weighted, lambda_u);

  for (int j = 0; j < m; ++j) density[j] = std::norm(u[j]);
  grid.analyze(density, bins);
  for (int b = 0; b < m; ++b) bins[b] *= static_cast<double>(std::abs(grid.signed_mode(b)));
  grid.synthesize(bins, lambda_density);

  double quartic = 0.0;
  double l4 = 0.0;
  for (int j = 0; j < m; ++j) {
    const double rho = density[j].real();
    // conj(u) Lambda u + u Lambda conj(u) = 2 Re(conj(u) Lambda u) since Lambda conj(u) = conj(Lambda u).
    quartic += -4.0 * rho * lambda_density[j].real() +
               4.0 * rho * (std::conj(u[j]) * lambda_u[j]).real();
    l4 += rho * rho;
  }
  const double dx = kTwoPi / m;
  return quartic * dx / kTwoPi - 2.0 * to_double(state.sigma()) / kPi * l4 * dx;
}

double momentum(const SpectralState& state) {
  double acc = 0.0;
  for (const Complex& c : state.coeffs()) acc += std::norm(c);
  return kTwoPi * acc;
}

double mass(const SpectralState& state) {
  double acc = 0.0;
  const auto a = state.coeffs();
  for (int k = 1; k <= state.n_modes(); ++k) acc += std::norm(a[k - 1]) / k;
  return kTwoPi * acc;
}

Complex first_mode(const SpectralState& state) { return state.coeffs()[0]; }

double sobolev_norm(const SpectralState& state, double s) {
  if (!(s >= -1.0)) throw UsageError("sobolev_norm: s must be >= -1");
  double acc = 0.0;
  const auto a = state.coeffs();
  for (int k = 1; k <= state.n_modes(); ++k) acc += std::pow(k, 2.0 * s) * std::norm(a[k - 1]);
  return std::sqrt(kTwoPi * acc);
}

InvariantReport make_report(const SpectralState& state, std::span<const double> sobolev_exponents) {
  InvariantReport report;
  report.energy = energy_spectral(state);
  report.momentum = momentum(state);
  report.mass = mass(state);
  report.a1 = first_mode(state);
  for (double s : sobolev_exponents) report.h_s_norms[s] = sobolev_norm(state, s);
  return report;
}

double pairing_check(const SpectralState& state) {
  const NonlinearityResult c = c_sigma_direct(state);
  const auto a = state.coeffs();
  Complex pairing{};
  for (int p = 1; p <= state.n_modes(); ++p) pairing += std::conj(c.coeffs_full()[p - 1]) * a[p - 1];
  return std::abs(kTwoPi * pairing - 0.5 * kPi * energy_spectral(state));
}

double energy_gradient_check(const SpectralState& state, double h) {
  if (!(h > 0.0 && h <= 1e-3)) throw UsageError("energy_gradient_check: h must lie in (0, 1e-3]");
  const NonlinearityResult c = c_sigma_direct(state);
  const CoeffVector base(state.coeffs().begin(), state.coeffs().end());

  auto energy_with = [&](int p, Complex delta) {
    CoeffVector shifted = base;
    shifted[p - 1] += delta;
    return energy_spectral(state.with_coeffs(std::move(shifted)));
  };

  double worst = 0.0;
  for (int p = 1; p <= state.n_modes(); ++p) {
    const double d_re = (energy_with(p, {h, 0.0}) - energy_with(p, {-h, 0.0})) / (2.0 * h);
    const double d_im = (energy_with(p, {0.0, h}) - energy_with(p, {0.0, -h})) / (2.0 * h);
    // Wirtinger derivative with respect to conj(a_p).
    const Complex grad = 0.5 * Complex(d_re, d_im);
    worst = std::max(worst, std::abs(grad - 8.0 * c.coeffs_full()[p - 1]));
  }
  return worst;
}

SpectralState shift_down(const SpectralState& state) {
  CoeffVector out(static_cast<size_t>(state.n_modes()));
  const auto a = state.coeffs();
  for (int j = 1; j < state.n_modes(); ++j) out[j - 1] = a[j];
  return state.with_coeffs(std::move(out));
}

SpectralState rotate_translate(const SpectralState& state, double theta, double x0) {
  CoeffVector out(state.coeffs().begin(), state.coeffs().end());
  for (int k = 1; k <= state.n_modes(); ++k) out[k - 1] *= std::polar(1.0, theta + k * x0);
  return state.with_coeffs(std::move(out));
}

SpectralState scaled(const SpectralState& state, Complex factor) {
  CoeffVector out(state.coeffs().begin(), state.coeffs().end());
  for (Complex& c : out) c *= factor;
  return state.with_coeffs(std::move(out));
}

double p_norm(std::span<const Complex> coeffs) {
  double acc = 0.0;
  for (const Complex& c : coeffs) acc += std::norm(c);
  return std::sqrt(kTwoPi * acc);
}

double p_distance(const SpectralState& a, const SpectralState& b) {
  if (a.n_modes() != b.n_modes()) throw UsageError("p_distance: n_modes mismatch");
  double acc = 0.0;
  for (int k = 0; k < a.n_modes(); ++k) acc += std::norm(a.coeffs()[k] - b.coeffs()[k]);
  return std::sqrt(kTwoPi * acc);
}

}  // namespace filament
