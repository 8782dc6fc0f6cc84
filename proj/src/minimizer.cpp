#include "filament/minimizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "filament/errors.hpp"
#include "filament/invariants.hpp"
#include "filament/nonlinearity.hpp"

namespace filament {

ConstraintMode parse_constraint_mode(const std::string& name) {
  if (name == "both") return ConstraintMode::both;
  if (name == "mass" || name == "mass_only") return ConstraintMode::mass_only;
  if (name == "momentum" || name == "momentum_only") return ConstraintMode::momentum_only;
  throw UsageError("unknown constraint mode '" + name + "'");
}

std::string to_string(ConstraintMode mode) {
  switch (mode) {
    case ConstraintMode::both:
      return "both";
    case ConstraintMode::mass_only:
      return "mass_only";
    case ConstraintMode::momentum_only:
      return "momentum_only";
  }
  return "both";
}

void ConstraintTarget::validate(int n_modes) const {
  if (n_modes < 1) throw UsageError("n_modes must be >= 1");
  const bool need_mass = mode != ConstraintMode::momentum_only;
  const bool need_momentum = mode != ConstraintMode::mass_only;
  if (need_mass && !(mass_target > 0.0 && std::isfinite(mass_target))) {
    throw UsageError("mass target must be positive");
  }
  if (need_momentum && !(momentum_target > 0.0 && std::isfinite(momentum_target))) {
    throw UsageError("momentum target must be positive");
  }
  if (mode == ConstraintMode::both) {
    const double slack = 1e-12 * momentum_target;
    if (mass_target > momentum_target + slack || mass_target < momentum_target / n_modes - slack) {
      std::ostringstream os;
      os << "infeasible target: need P*/N <= M* <= P* (M*=" << mass_target
         << ", P*=" << momentum_target << ", N=" << n_modes << ")";
      throw UsageError(os.str());
    }
  }
}

namespace {

constexpr double kProjectionTol = 1e-14;

SpectralState single_mode_projection(const SpectralState& state, int k, double momentum_target) {
  CoeffVector out(static_cast<size_t>(state.n_modes()));
  const Complex ak = state.coeffs()[k - 1];
  const Complex phase = std::abs(ak) > 0.0 ? ak / std::abs(ak) : Complex(1.0, 0.0);
  out[k - 1] = phase * std::sqrt(momentum_target / kTwoPi);
  return state.with_coeffs(std::move(out));
}

SpectralState rescaled(const SpectralState& state, double factor) {
  return scaled(state, Complex(factor, 0.0));
}

}  // namespace

SpectralState project_to_constraints(const SpectralState& state, const ConstraintTarget& target) {
  target.validate(state.n_modes());
  const double p_now = momentum(state);
  if (p_now == 0.0) throw UsageError("project_to_constraints: state is identically zero");

  if (target.mode == ConstraintMode::momentum_only) {
    return rescaled(state, std::sqrt(target.momentum_target / p_now));
  }
  if (target.mode == ConstraintMode::mass_only) {
    return rescaled(state, std::sqrt(target.mass_target / mass(state)));
  }

  const int n = state.n_modes();
  const double p_star = target.momentum_target;
  const double m_star = target.mass_target;
  // Endpoints of the feasible range force a single occupied mode.
  if (std::abs(m_star - p_star) <= 1e-12 * p_star) return single_mode_projection(state, 1, p_star);
  if (n > 1 && std::abs(m_star - p_star / n) <= 1e-12 * p_star) {
    return single_mode_projection(state, n, p_star);
  }

  std::vector<double> w(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) w[k - 1] = kTwoPi * std::norm(state.coeffs()[k - 1]);

  struct Eval {
    bool valid = false;
    Eigen::Vector2d f;
    Eigen::Matrix2d jac;
  };
  auto evaluate = [&](double alpha, double beta) {
    Eval e;
    double p = 0.0, m = 0.0, s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int k = 1; k <= n; ++k) {
      if (w[k - 1] == 0.0) continue;
      const double d = 1.0 + alpha + beta / k;
      if (!(d > 0.0)) return e;
      const double inv2 = 1.0 / (d * d);
      const double inv3 = inv2 / d;
      p += w[k - 1] * inv2;
      m += w[k - 1] * inv2 / k;
      s0 += w[k - 1] * inv3;
      s1 += w[k - 1] * inv3 / k;
      s2 += w[k - 1] * inv3 / (static_cast<double>(k) * k);
    }
    e.valid = true;
    e.f << (p - p_star) / p_star, (m - m_star) / m_star;
    e.jac << -2.0 * s0 / p_star, -2.0 * s1 / p_star, -2.0 * s1 / m_star, -2.0 * s2 / m_star;
    return e;
  };

  double alpha = 0.0, beta = 0.0;
  Eval cur = evaluate(alpha, beta);
  for (int iter = 0; iter < 100; ++iter) {
    if (cur.f.cwiseAbs().maxCoeff() <= kProjectionTol) {
      CoeffVector out(state.coeffs().begin(), state.coeffs().end());
      for (int k = 1; k <= n; ++k) out[k - 1] /= (1.0 + alpha + beta / k);
      return state.with_coeffs(std::move(out));
    }
    const double det = cur.jac.determinant();
    const double scale = cur.jac.cwiseAbs().maxCoeff();
    if (!(std::abs(det) > 1e-14 * scale * scale)) {
      throw ProjectionFailure(
          "project_to_constraints: singular Newton system (state support cannot reach target)",
          cur.f.norm());
    }
    const Eigen::Vector2d delta = cur.jac.partialPivLu().solve(-cur.f);
    double t = 1.0;
    Eval next;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      next = evaluate(alpha + t * delta(0), beta + t * delta(1));
      if (next.valid && next.f.norm() < (1.0 - 1e-4 * t) * cur.f.norm()) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // Rounding floor reached just above tolerance.
      if (cur.f.cwiseAbs().maxCoeff() <= 1e-12) {
        CoeffVector out(state.coeffs().begin(), state.coeffs().end());
        for (int k = 1; k <= n; ++k) out[k - 1] /= (1.0 + alpha + beta / k);
        return state.with_coeffs(std::move(out));
      }
      throw ProjectionFailure("project_to_constraints: Newton line search failed", cur.f.norm());
    }
    alpha += t * delta(0);
    beta += t * delta(1);
    cur = next;
  }
  throw ProjectionFailure("project_to_constraints: Newton did not converge in 100 iterations",
                          cur.f.norm());
}

std::array<double, 2> constraint_violation(const SpectralState& state,
                                           const ConstraintTarget& target) {
  std::array<double, 2> v{0.0, 0.0};
  if (target.mode != ConstraintMode::momentum_only) {
    v[0] = std::abs(mass(state) - target.mass_target) / target.mass_target;
  }
  if (target.mode != ConstraintMode::mass_only) {
    v[1] = std::abs(momentum(state) - target.momentum_target) / target.momentum_target;
  }
  return v;
}

MultiplierFit multiplier_extraction(const SpectralState& state) {
  const int n = state.n_modes();
  if (momentum(state) == 0.0) throw UsageError("multiplier_extraction: zero state");
  const NonlinearityResult c = c_sigma_direct(state);
  Eigen::MatrixXd a(2 * n, 2);
  Eigen::VectorXd b(2 * n);
  for (int p = 1; p <= n; ++p) {
    const Complex ap = state.coeffs()[p - 1];
    const Complex target = (4.0 / kPi) * c.coeffs_full()[p - 1];
    a(2 * p - 2, 0) = ap.real() / p;
    a(2 * p - 1, 0) = ap.imag() / p;
    a(2 * p - 2, 1) = ap.real();
    a(2 * p - 1, 1) = ap.imag();
    b(2 * p - 2) = target.real();
    b(2 * p - 1) = target.imag();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const Eigen::Vector2d x = svd.solve(b);
  const double rhs_norm = b.norm();
  const double misfit = (a * x - b).norm();
  return {x(0), x(1), rhs_norm > 0.0 ? misfit / rhs_norm : misfit};
}

SpectralState gauge_fixed(const SpectralState& state) {
  const auto a = state.coeffs();
  double largest = 0.0;
  for (const Complex& c : a) largest = std::max(largest, std::abs(c));
  for (const Complex& c : a) {
    if (std::abs(c) > 1e-12 * largest && largest > 0.0) {
      return scaled(state, std::conj(c) / std::abs(c));
    }
  }
  return state;
}

namespace {

double real_dot(std::span<const Complex> x, std::span<const Complex> y) {
  double acc = 0.0;
  for (size_t i = 0; i < x.size(); ++i) acc += (std::conj(x[i]) * y[i]).real();
  return acc;
}

// Removes the components of g along the constraint normals at a.
CoeffVector tangent_component(std::span<const Complex> a, const CoeffVector& g,
                              ConstraintMode mode) {
  const int n = static_cast<int>(a.size());
  std::vector<CoeffVector> normals;
  if (mode != ConstraintMode::mass_only) normals.emplace_back(a.begin(), a.end());
  if (mode != ConstraintMode::momentum_only) {
    CoeffVector v(a.begin(), a.end());
    for (int k = 1; k <= n; ++k) v[k - 1] /= k;
    normals.push_back(std::move(v));
  }
  const auto dim = static_cast<Eigen::Index>(normals.size());
  Eigen::MatrixXd gram(dim, dim);
  Eigen::VectorXd rhs(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    rhs(i) = real_dot(normals[i], g);
    for (Eigen::Index j = 0; j < dim; ++j) gram(i, j) = real_dot(normals[i], normals[j]);
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
  cod.setThreshold(1e-12);
  const Eigen::VectorXd coef = cod.solve(rhs);
  CoeffVector out = g;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (int k = 0; k < n; ++k) out[k] -= coef(i) * normals[i][k];
  }
  return out;
}

}  // namespace

MinimizerResult minimize_energy(Sigma sigma, int n_modes, const ConstraintTarget& target,
                                const std::optional<SpectralState>& init,
                                const MinimizerOptions& options) {
  target.validate(n_modes);
  if (!(options.tol > 0.0) || options.max_iter < 1 || options.max_backtracks < 1) {
    throw UsageError("minimize_energy: invalid options");
  }
  SpectralState start = init ? init->with_sigma(sigma)
                             : random_state(sigma, n_modes, options.seed, options.random_init);
  if (start.n_modes() != n_modes) throw UsageError("minimize_energy: init has wrong n_modes");

  CubicWorkspace work(n_modes);
  CoeffVector cubic(static_cast<size_t>(n_modes));
  auto projected_gradient = [&](const SpectralState& u) {
    c_sigma_fast_into(sigma, u.coeffs(), work, cubic);
    CoeffVector g(cubic.size());
    for (size_t i = 0; i < g.size(); ++i) g[i] = 8.0 * cubic[i];
    return tangent_component(u.coeffs(), g, target.mode);
  };

  SpectralState u = project_to_constraints(start, target);
  double energy = energy_spectral(u);
  MinimizerResult result{u};
  result.seed = options.seed;
  result.energy_history.push_back(energy);

  CoeffVector grad = projected_gradient(u);
  double gnorm = p_norm(grad);
  double step = 0.1 * p_norm(u.coeffs()) / std::max(gnorm, 1e-300);
  CoeffVector prev_u, prev_grad;

  int iter = 0;
  for (; iter < options.max_iter && gnorm > options.tol; ++iter) {
    if (!prev_u.empty()) {
      CoeffVector du(prev_u.size()), dg(prev_u.size());
      for (size_t i = 0; i < du.size(); ++i) {
        du[i] = u.coeffs()[i] - prev_u[i];
        dg[i] = grad[i] - prev_grad[i];
      }
      const double curvature = real_dot(du, dg);
      if (curvature > 0.0) step = real_dot(du, du) / curvature;
    }

    const double flat_sq = real_dot(grad, grad);
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(energy));
    bool accepted = false;
    SpectralState trial = u;
    double trial_energy = energy;
    for (int bt = 0; bt < options.max_backtracks; ++bt) {
      CoeffVector moved(u.coeffs().begin(), u.coeffs().end());
      for (size_t i = 0; i < moved.size(); ++i) moved[i] -= step * grad[i];
      try {
        trial = project_to_constraints(u.with_coeffs(std::move(moved)), target);
        trial_energy = energy_spectral(trial);
        const double predicted = 2.0 * step * flat_sq;
        const bool armijo = trial_energy <= energy - options.armijo * predicted;
        // Below rounding level the Armijo test is meaningless; accept non-increase.
        const bool flat = predicted <= noise && trial_energy <= energy + noise;
        if (armijo || flat) {
          accepted = true;
          break;
        }
      } catch (const ProjectionFailure&) {
      }
      step *= 0.5;
    }
    if (!accepted) {
      std::ostringstream os;
      os << "minimize_energy: energy failed to decrease after " << options.max_backtracks
         << " backtracks at iteration " << iter << " (E=" << energy
         << ", projected gradient norm=" << gnorm << ")";
      throw NumericalError(os.str());
    }
    prev_u.assign(u.coeffs().begin(), u.coeffs().end());
    prev_grad = grad;
    u = trial;
    energy = trial_energy;
    result.energy_history.push_back(energy);
    grad = projected_gradient(u);
    gnorm = p_norm(grad);
  }

  result.state = gauge_fixed(u);
  result.energy = energy_spectral(result.state);
  result.iterations = iter;
  result.gradient_norm = gnorm;
  result.converged = gnorm <= options.tol;
  result.constraint_violation = constraint_violation(result.state, target);
  const MultiplierFit fit = multiplier_extraction(result.state);
  result.lambda = fit.lambda;
  result.mu = fit.mu;
  result.el_residual = fit.el_residual;
  return result;
}

MinimizerResult minimize_multistart(Sigma sigma, int n_modes, const ConstraintTarget& target,
                                    std::span<const std::uint64_t> seeds,
                                    const MinimizerOptions& options) {
  if (seeds.empty()) throw UsageError("minimize_multistart: no seeds");
  std::vector<std::future<MinimizerResult>> runs;
  for (std::uint64_t seed : seeds) {
    MinimizerOptions per_run = options;
    per_run.seed = seed;
    runs.push_back(std::async(std::launch::async, [=] {
      return minimize_energy(sigma, n_modes, target, std::nullopt, per_run);
    }));
  }
  std::optional<MinimizerResult> best;
  for (auto& run : runs) {
    MinimizerResult r = run.get();
    if (!best || r.energy < best->energy) best = std::move(r);
  }
  return *best;
}

}  // namespace filament
