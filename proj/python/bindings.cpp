#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "filament/errors.hpp"
#include "filament/integrator.hpp"
#include "filament/invariants.hpp"
#include "filament/io.hpp"
#include "filament/minimizer.hpp"
#include "filament/nonlinearity.hpp"
#include "filament/random_state.hpp"
#include "filament/waves.hpp"

namespace py = pybind11;
using namespace filament;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexArray to_array(std::span<const Complex> v) {
  ComplexArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

CoeffVector from_array(const ComplexArray& a) {
  if (a.ndim() != 1) throw UsageError("coefficients must be a one-dimensional array");
  return CoeffVector(a.data(), a.data() + a.size());
}

StepperConfig stepper(double dt, double t_end, const std::string& scheme, int sample_every) {
  StepperConfig c;
  c.scheme = parse_scheme(scheme);
  c.dt = dt;
  c.t_end = t_end;
  c.sample_every = sample_every;
  c.validate();
  return c;
}

NonlinearityResult c_sigma_route(const SpectralState& s, const std::string& route, int n_quad) {
  if (route == "fast") return c_sigma_fast(s);
  if (route == "direct") return c_sigma_direct(s);
  if (route == "unsym") return c_sigma_unsym(s);
  if (route == "quadrature") return c_sigma_quadrature(s, n_quad);
  throw UsageError("unknown route '" + route + "' (fast, direct, unsym, quadrature)");
}

py::dict minimizer_dict(const MinimizerResult& r) {
  py::dict d;
  d["state"] = r.state;
  d["energy"] = r.energy;
  d["lambda"] = r.lambda;
  d["mu"] = r.mu;
  d["el_residual"] = r.el_residual;
  d["constraint_violation"] = py::make_tuple(r.constraint_violation[0], r.constraint_violation[1]);
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["gradient_norm"] = r.gradient_norm;
  d["seed"] = r.seed;
  d["energy_history"] = r.energy_history;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral Galerkin core for the filamentation equation.";
  m.attr("__version__") = io::kVersion;
  m.attr("CONVENTION") = io::kConvention;

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);
  // Translators run newest first, so subclasses are registered after their base.
  py::register_exception<StepFailure>(m, "StepFailure", numerical.ptr());
  py::register_exception<ProjectionFailure>(m, "ProjectionFailure", numerical.ptr());

  py::class_<SpectralState>(m, "SpectralState")
      .def(py::init([](int sigma, const ComplexArray& coeffs) {
             return SpectralState(sigma_from_int(sigma), from_array(coeffs));
           }),
           py::arg("sigma"), py::arg("coeffs"))
      .def_static("zero", [](int sigma, int n) { return SpectralState::zero(sigma_from_int(sigma), n); },
                  py::arg("sigma"), py::arg("n_modes"))
      .def_property_readonly("sigma", [](const SpectralState& s) { return to_int(s.sigma()); })
      .def_property_readonly("n_modes", &SpectralState::n_modes)
      .def_property_readonly("coeffs", [](const SpectralState& s) { return to_array(s.coeffs()); })
      .def("mode", &SpectralState::mode, py::arg("k"))
      .def("__repr__", [](const SpectralState& s) {
        return "SpectralState(sigma=" + std::to_string(to_int(s.sigma())) +
               ", n_modes=" + std::to_string(s.n_modes()) + ")";
      });

  m.def(
      "c_sigma",
      [](const SpectralState& s, const std::string& route, int n_quad) {
        return to_array(c_sigma_route(s, route, n_quad).coeffs_full());
      },
      py::arg("state"), py::arg("route") = "fast", py::arg("n_quad") = 4096,
      "Projected cubic term on modes 1..2N-1.");
  m.def("kernel_integral", &kernel_integral, py::arg("m"), py::arg("n_quad") = 4096);

  m.def("energy", &energy_spectral, py::arg("state"));
  m.def("energy_quadrature", &energy_quadrature, py::arg("state"), py::arg("n_quad") = 1024);
  m.def("energy_lambda_form", &energy_lambda_form, py::arg("state"));
  m.def("momentum", &momentum, py::arg("state"));
  m.def("mass", &mass, py::arg("state"));
  m.def("sobolev_norm", &sobolev_norm, py::arg("state"), py::arg("s"));
  m.def("pairing_check", &pairing_check, py::arg("state"));
  m.def("energy_gradient_check", &energy_gradient_check, py::arg("state"), py::arg("h"));
  m.def("rotate_translate", &rotate_translate, py::arg("state"), py::arg("theta"), py::arg("x0"));
  m.def("scaled", &scaled, py::arg("state"), py::arg("factor"));
  m.def("p_distance", &p_distance, py::arg("a"), py::arg("b"));

  m.def(
      "random_state",
      [](int sigma, int n, std::uint64_t seed, double decay, double p_norm) {
        RandomStateOptions o;
        o.decay = decay;
        o.p_norm = p_norm;
        return random_state(sigma_from_int(sigma), n, seed, o);
      },
      py::arg("sigma"), py::arg("n_modes"), py::arg("seed"), py::arg("decay") = 2.0, py::arg("p_norm") = 0.0);
  m.def(
      "psi_k", [](int k, int sigma, int n) { return make_psi_k(k, sigma_from_int(sigma), n); }, py::arg("k"),
      py::arg("sigma"), py::arg("n_modes"));
  m.def("two_mode", &make_two_mode, py::arg("a"), py::arg("b"), py::arg("k"), py::arg("n_modes"));

  m.def(
      "rhs", [](const SpectralState& s) { return to_array(rhs(s).coeffs()); }, py::arg("state"));
  m.def(
      "evolve",
      [](const SpectralState& s, double dt, double t_end, const std::string& scheme) {
        const auto cfg = stepper(dt, t_end, scheme, 1);
        py::gil_scoped_release release;
        return evolve(s, cfg);
      },
      py::arg("state"), py::arg("dt"), py::arg("t_end"), py::arg("scheme") = "rk4");
  m.def(
      "simulate",
      [](const SpectralState& s, double dt, double t_end, const std::string& scheme, int sample_every) {
        const auto cfg = stepper(dt, t_end, scheme, sample_every);
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = simulate(s, cfg);
        }
        const auto rows = static_cast<py::ssize_t>(tr.states.size());
        ComplexArray coeffs({rows, static_cast<py::ssize_t>(s.n_modes())});
        py::array_t<double> e(rows), p(rows), mm(rows);
        for (py::ssize_t i = 0; i < rows; ++i) {
          const auto c = tr.states[static_cast<size_t>(i)].coeffs();
          std::copy(c.begin(), c.end(), coeffs.mutable_data(i, 0));
          const auto& r = tr.reports[static_cast<size_t>(i)];
          e.mutable_at(i) = r.energy;
          p.mutable_at(i) = r.momentum;
          mm.mutable_at(i) = r.mass;
        }
        py::dict d;
        d["t"] = tr.times;
        d["coeffs"] = coeffs;
        d["E"] = e;
        d["P"] = p;
        d["M"] = mm;
        return d;
      },
      py::arg("state"), py::arg("dt"), py::arg("t_end"), py::arg("scheme") = "rk4", py::arg("sample_every") = 1);
  m.def(
      "time_reversal_check",
      [](const SpectralState& s, double dt, double t_end) { return time_reversal_check(s, stepper(dt, t_end, "rk4", 1)); },
      py::arg("state"), py::arg("dt"), py::arg("t_end"));
  m.def(
      "scaling_check",
      [](const SpectralState& s, double lambda, double dt, double t_end) {
        return scaling_check(s, lambda, stepper(dt, t_end, "rk4", 1));
      },
      py::arg("state"), py::arg("lam"), py::arg("dt"), py::arg("t_end"));

  m.def(
      "wave_residual",
      [](const SpectralState& s, double c, double omega) {
        const auto w = wave_residual(s, c, omega);
        return py::make_tuple(w.residual, w.pairing_defect);
      },
      py::arg("profile"), py::arg("c"), py::arg("omega"), "Returns (residual, pairing_defect).");
  m.def(
      "stationary_scan",
      [](const SpectralState& s, double tol) {
        const auto r = stationary_scan(s, tol);
        py::dict d;
        d["rhs_norm"] = r.rhs_norm;
        d["stationary"] = r.stationary;
        d["in_stationary_set"] = r.in_stationary_set;
        return d;
      },
      py::arg("state"), py::arg("tol") = 1e-12);
  m.def(
      "two_mode_phase_probe",
      [](Complex a, Complex b, int k, int n, double dt, double t_end) {
        const auto r = two_mode_phase_probe(a, b, k, n, stepper(dt, t_end, "rk4", 1));
        py::dict d;
        d["measured_rate"] = r.measured_rate;
        d["derived_rate"] = r.derived_rate;
        d["alternative_rate"] = r.alternative_rate;
        d["a1_drift"] = r.a1_drift;
        d["ak_modulus_drift"] = r.ak_modulus_drift;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("k"), py::arg("n_modes"), py::arg("dt") = 1e-3, py::arg("t_end") = 1.0);

  m.def(
      "minimize",
      [](int sigma, int n, double mass_target, double momentum_target, const std::string& constraint,
         std::optional<SpectralState> init, double tol, int max_iter, std::uint64_t seed) {
        const ConstraintTarget target{mass_target, momentum_target, parse_constraint_mode(constraint)};
        MinimizerOptions o;
        o.tol = tol;
        o.max_iter = max_iter;
        o.seed = seed;
        MinimizerResult r{SpectralState::zero(Sigma::planar, 1)};
        {
          py::gil_scoped_release release;
          r = minimize_energy(sigma_from_int(sigma), n, target, init, o);
        }
        return minimizer_dict(r);
      },
      py::arg("sigma"), py::arg("n_modes"), py::arg("mass_target"), py::arg("momentum_target"),
      py::arg("constraint") = "both", py::arg("init") = py::none(), py::arg("tol") = 1e-9,
      py::arg("max_iter") = 20000, py::arg("seed") = 1);

  m.def("write_snapshot", &io::write_snapshot, py::arg("path"), py::arg("state"));
  m.def("read_snapshot", &io::read_snapshot, py::arg("path"));
}
