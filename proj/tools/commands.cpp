#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "filament/errors.hpp"
#include "filament/integrator.hpp"
#include "filament/invariants.hpp"
#include "filament/minimizer.hpp"
#include "filament/nonlinearity.hpp"
#include "filament/random_state.hpp"
#include "filament/waves.hpp"

namespace filament::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::logic_error&) {
  }
  throw UsageError("bad " + what + ": '" + text + "'");
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw UsageError("bad " + what + ": '" + text + "'");
}

// "x" or "(re,im)".
Complex parse_complex(const std::string& text, const std::string& what) {
  if (!text.empty() && text.front() == '(' && text.back() == ')') {
    const auto parts = split(text.substr(1, text.size() - 2), ',');
    if (parts.size() != 2) throw UsageError("bad " + what + ": '" + text + "'");
    return {parse_double(parts[0], what), parse_double(parts[1], what)};
  }
  return parse_double(text, what);
}

enum class InitKind { psi_k, two_mode, random, file };

struct Initial {
  InitKind kind = InitKind::random;
  SpectralState state = SpectralState::zero(Sigma::planar, 1);
  int k = 0;
  Complex a{}, b{};
};

Initial build_initial(const RunConfig& cfg) {
  const auto parts = split(cfg.init, ':');
  if (parts.empty()) throw UsageError("empty --init");
  const std::string& kind = parts[0];
  const Sigma sigma = sigma_from_int(cfg.sigma);
  Initial init;
  if (kind == "psi_k") {
    if (parts.size() != 2) throw UsageError("--init psi_k expects psi_k:<k>");
    init.kind = InitKind::psi_k;
    init.k = parse_int(parts[1], "psi_k mode");
    init.state = make_psi_k(init.k, sigma, cfg.n_modes_given ? cfg.n_modes : std::max(cfg.n_modes, init.k));
  } else if (kind == "two_mode") {
    if (parts.size() != 4) throw UsageError("--init two_mode expects two_mode:<A>:<B>:<k>");
    if (cfg.sigma_given && cfg.sigma != 1) throw UsageError("two_mode initial data requires --sigma 1");
    init.kind = InitKind::two_mode;
    init.a = parse_complex(parts[1], "two_mode A");
    init.b = parse_complex(parts[2], "two_mode B");
    init.k = parse_int(parts[3], "two_mode k");
    init.state = make_two_mode(init.a, init.b, init.k,
                               cfg.n_modes_given ? cfg.n_modes : std::max(cfg.n_modes, init.k));
  } else if (kind == "random") {
    if (parts.size() != 1) throw UsageError("--init random takes no arguments (see --random-options)");
    init.kind = InitKind::random;
    init.state = random_state(sigma, cfg.n_modes, cfg.seed, parse_random_options(cfg.random_options));
  } else if (kind == "file") {
    if (parts.size() < 2) throw UsageError("--init file expects file:<path>");
    init.kind = InitKind::file;
    const std::string path = cfg.init.substr(5);
    init.state = io::read_snapshot(path);
    if (cfg.sigma_given && cfg.sigma != to_int(init.state.sigma())) {
      throw UsageError("--sigma disagrees with the snapshot in " + path);
    }
    if (cfg.n_modes_given && cfg.n_modes != init.state.n_modes()) {
      throw UsageError("--n-modes disagrees with the snapshot in " + path);
    }
  } else {
    throw UsageError("unknown --init kind '" + kind + "' (psi_k, two_mode, random, file)");
  }
  return init;
}

double default_dt(int n_modes) { return std::min(1e-3, 0.1 / (static_cast<double>(n_modes) * n_modes)); }

StepperConfig stepper_config(const RunConfig& cfg, int n_modes) {
  StepperConfig sc;
  sc.scheme = parse_scheme(cfg.scheme);
  sc.dt = cfg.dt.value_or(default_dt(n_modes));
  sc.t_end = cfg.t_end;
  sc.sample_every = cfg.sample_every;
  sc.sobolev_exponents = cfg.hs;
  sc.validate();
  return sc;
}

double drift(double now, double then) {
  return then != 0.0 ? std::abs(now - then) / std::abs(then) : std::abs(now - then);
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json resolved_config(const RunConfig& cfg, const SpectralState& state) {
  json c = cfg.to_json();
  c["sigma"] = to_int(state.sigma());
  c["n_modes"] = state.n_modes();
  return c;
}

std::string fixed(double v, int precision = 3) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(precision) << v;
  return os.str();
}

// Pass/fail table shared by verify and selftest.
class CheckTable {
 public:
  explicit CheckTable(Output& out) : out_(out) {}

  void add(const std::string& name, double measured, double expected, double deviation, double tolerance) {
    const bool pass = std::isfinite(deviation) && deviation <= tolerance;
    failures_ += pass ? 0 : 1;
    rows_.push_back({name, measured, expected, deviation, tolerance, pass});
    if (out_.file_backed()) {
      out_.emit({{"record", "check"},
                 {"name", name},
                 {"measured", measured},
                 {"expected", expected},
                 {"deviation", deviation},
                 {"tolerance", tolerance},
                 {"pass", pass}});
    }
  }

  /// Strict lower bound, shown as deviation 0 (pass) or 1 (fail) against tolerance 0.
  void add_lower_bound(const std::string& name, double measured, double bound) {
    add(name, measured, bound, measured > bound ? 0.0 : 1.0, 0.0);
  }

  int finish(std::ostream& os) const {
    std::size_t width = 5;
    for (const auto& r : rows_) width = std::max(width, r.name.size());
    os << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(22) << "measured"
       << std::setw(22) << "expected" << std::setw(11) << "deviation" << std::setw(11) << "tolerance"
       << "status\n";
    for (const auto& r : rows_) {
      os << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::setw(22)
         << std::setprecision(15) << std::defaultfloat << r.measured << std::setw(22) << r.expected
         << std::setw(11) << fixed(r.deviation, 2) << std::setw(11) << fixed(r.tolerance, 1)
         << (r.pass ? "pass" : "FAIL") << '\n';
    }
    os << rows_.size() - static_cast<std::size_t>(failures_) << "/" << rows_.size() << " checks passed\n";
    return failures_ == 0 ? 0 : 2;
  }

 private:
  struct Row {
    std::string name;
    double measured, expected, deviation, tolerance;
    bool pass;
  };
  Output& out_;
  std::vector<Row> rows_;
  int failures_ = 0;
};

double max_rel_dev(std::span<const Complex> got, std::span<const Complex> ref) {
  double scale = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    scale = std::max(scale, std::abs(ref[i]));
    worst = std::max(worst, std::abs(got[i] - ref[i]));
  }
  return scale > 0.0 ? worst / scale : worst;
}

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

template <class F>
double seconds_per_call(F&& f) {
  using clock = std::chrono::steady_clock;
  int reps = 0;
  const auto start = clock::now();
  double elapsed = 0.0;
  do {
    f();
    ++reps;
    elapsed = std::chrono::duration<double>(clock::now() - start).count();
  } while (elapsed < 0.05 && reps < 100000);
  return elapsed / reps;
}

}  // namespace

json RunConfig::to_json() const {
  json c = {{"sigma", sigma},
            {"n_modes", n_modes},
            {"t_end", t_end},
            {"scheme", scheme},
            {"seed", seed},
            {"init", init},
            {"tol", tol}};
  if (dt) c["dt"] = *dt;
  if (!random_options.empty()) c["random_options"] = random_options;
  if (mass_target) c["mass_target"] = *mass_target;
  if (momentum_target) c["momentum_target"] = *momentum_target;
  if (command == "minimize") {
    c["constraint"] = constraint;
    c["max_iter"] = max_iter;
    c["starts"] = starts;
  }
  if (command == "simulate") {
    c["sample_every"] = sample_every;
    c["snapshot_every"] = snapshot_every;
    c["hs"] = hs;
  }
  if (command == "wave-residual") {
    c["c"] = speed;
    if (phase_rate) c["omega"] = *phase_rate;
  }
  if (command == "verify") c["samples"] = samples;
  if (command == "bench") c["sizes"] = sizes;
  return c;
}

Output::Output(const std::string& command, const std::string& out_path) : stream_(&std::cout) {
  std::filesystem::path path;
  if (!out_path.empty()) {
    path = out_path;
  } else if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(std::string("cannot create output directory '") + dir + "': " + ec.message());
    path = std::filesystem::path(dir) / (command + ".jsonl");
  }
  if (path.empty()) {
    dir_ = std::filesystem::current_path();
    return;
  }
  file_.open(path);
  if (!file_) throw IoError("cannot open '" + path.string() + "' for writing");
  stream_ = &file_;
  dir_ = path.has_parent_path() ? path.parent_path() : std::filesystem::current_path();
}

void Output::emit(const json& record) {
  *stream_ << record.dump() << '\n';
  stream_->flush();
  if (!*stream_) throw IoError("writing output failed");
}

int cmd_simulate(const RunConfig& cfg, Output& out) {
  const Initial init = build_initial(cfg);
  const SpectralState& s0 = init.state;
  const StepperConfig sc = stepper_config(cfg, s0.n_modes());
  if (cfg.snapshot_every < 0) throw UsageError("--snapshot-every must be >= 0");

  json config = resolved_config(cfg, s0);
  config["dt"] = sc.dt;
  out.emit(io::header_record("simulate", config));

  InvariantReport first, last;
  SpectralState final_state = s0;
  double t_final = 0.0;
  simulate_streaming(s0, sc, [&](long long step, double t, const SpectralState& s, const InvariantReport& r) {
    json rec = io::report_record(t, r);
    rec["record"] = "sample";
    rec["step"] = step;
    out.emit(rec);
    if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%010lld.json", step);
      io::write_snapshot(out.directory() / name, s);
    }
    if (step == 0) first = r;
    last = r;
    final_state = s;
    t_final = t;
  });

  out.emit({{"record", "final"},
            {"t", t_final},
            {"E_drift", drift(last.energy, first.energy)},
            {"P_drift", drift(last.momentum, first.momentum)},
            {"M_drift", drift(last.mass, first.mass)},
            {"a1_drift", std::abs(last.a1 - first.a1)},
            {"state", io::snapshot_to_json(final_state)}});

  if (init.kind == InitKind::psi_k) {
    const int k = init.k;
    const Complex expected = std::polar(1.0, k * (k - to_double(s0.sigma())) * t_final);
    const Complex got = final_state.mode(k);
    out.emit({{"record", "psi_k_phase"},
              {"k", k},
              {"t", t_final},
              {"expected", complex_json(expected)},
              {"measured", complex_json(got)},
              {"error", std::abs(got - expected)},
              {"modulus_error", std::abs(std::abs(got) - 1.0)}});
  } else if (init.kind == InitKind::two_mode) {
    const auto probe = two_mode_phase_probe(init.a, init.b, init.k, s0.n_modes(), sc);
    out.emit({{"record", "two_mode_phase"},
              {"k", init.k},
              {"measured_rate", probe.measured_rate},
              {"derived_rate", probe.derived_rate},
              {"alternative_rate", probe.alternative_rate},
              {"derived_deviation", std::abs(probe.measured_rate - probe.derived_rate)},
              {"alternative_deviation", std::abs(probe.measured_rate - probe.alternative_rate)},
              {"a1_drift", probe.a1_drift},
              {"ak_modulus_drift", probe.ak_modulus_drift}});
  }
  if (!cfg.save.empty()) io::write_snapshot(cfg.save, final_state);
  return 0;
}

int cmd_verify(const RunConfig& cfg, Output& out) {
  const int n = cfg.n_modes;
  if (n < 1 || n > 128) throw UsageError("verify: --n-modes must lie in [1, 128]");
  if (cfg.samples < 1) throw UsageError("verify: --samples must be >= 1");
  if (out.file_backed()) out.emit(io::header_record("verify", cfg.to_json()));
  CheckTable table(out);

  for (int m = 0; m <= 16; ++m) {
    const double v = kernel_integral(m, 4096);
    const double want = 2.0 * kPi * m;
    table.add("kernel_integral m=" + std::to_string(m), v, want, std::abs(v - want), 1e-8);
  }

  const SpectralState ones0(Sigma::planar, {1.0, 1.0});
  const SpectralState ones1(Sigma::spherical, {1.0, 1.0});
  table.add("E_0(1,1)", energy_spectral(ones0), 28.0, std::abs(energy_spectral(ones0) - 28.0), 1e-12);
  table.add("E_1(1,1)", energy_spectral(ones1), 4.0, std::abs(energy_spectral(ones1) - 4.0), 1e-12);

  for (Sigma sigma : {Sigma::planar, Sigma::spherical}) {
    const std::string tag = " sigma=" + std::to_string(to_int(sigma));
    double worst = 0.0, worst_quad = 0.0;
    for (int k = 1; k <= n; ++k) {
      const auto psi = make_psi_k(k, sigma, n);
      CoeffVector want(static_cast<std::size_t>(2 * n - 1));
      want[k - 1] = k - to_double(sigma);
      const double scale = std::max(1.0, std::abs(want[k - 1]));
      for (const auto& r : {c_sigma_direct(psi), c_sigma_unsym(psi), c_sigma_fast(psi)}) {
        for (std::size_t i = 0; i < want.size(); ++i) {
          worst = std::max(worst, std::abs(r.coeffs_full()[i] - want[i]) / scale);
        }
      }
      const auto q = c_sigma_quadrature(psi, 4096);
      for (std::size_t i = 0; i < want.size(); ++i) {
        worst_quad = std::max(worst_quad, std::abs(q.coeffs_full()[i] - want[i]) / scale);
      }
      const double e = energy_spectral(psi);
      const double e_want = 4.0 * (k - to_double(sigma));
      if (k <= 8) table.add("psi_k energy k=" + std::to_string(k) + tag, e, e_want, std::abs(e - e_want), 1e-12);
    }
    table.add("eigenrelation exact routes" + tag, worst, 0.0, worst, 1e-12);
    table.add("eigenrelation quadrature" + tag, worst_quad, 0.0, worst_quad, 1e-6);

    double fast = 0.0, unsym = 0.0, quad = 0.0, lam = 0.0, equad = 0.0, pairing = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const auto s = random_state(sigma, n, cfg.seed + static_cast<std::uint64_t>(i));
      const auto ref = c_sigma_direct(s);
      fast = std::max(fast, max_rel_dev(c_sigma_fast(s).coeffs_full(), ref.coeffs_full()));
      unsym = std::max(unsym, max_rel_dev(c_sigma_unsym(s).coeffs_full(), ref.coeffs_full()));
      quad = std::max(quad, max_rel_dev(c_sigma_quadrature(s, 4096).coeffs_full(), ref.coeffs_full()));
      const double e = energy_spectral(s);
      lam = std::max(lam, rel(energy_lambda_form(s), e));
      equad = std::max(equad, rel(energy_quadrature(s, std::max(1024, 8 * n)), e));
      pairing = std::max(pairing, pairing_check(s));
    }
    table.add("c_sigma_fast vs direct" + tag, fast, 0.0, fast, 1e-12);
    table.add("c_sigma_unsym vs direct" + tag, unsym, 0.0, unsym, 1e-12);
    table.add("c_sigma_quadrature vs direct" + tag, quad, 0.0, quad, 1e-6);
    table.add("energy lambda-form vs spectral" + tag, lam, 0.0, lam, 1e-11);
    table.add("energy quadrature vs spectral" + tag, equad, 0.0, equad, 1e-5);
    table.add("pairing defect" + tag, pairing, 0.0, pairing, 1e-10);

    const auto g = random_state(sigma, n, cfg.seed + 1000);
    const double ratio = energy_gradient_check(g, 1e-3) / energy_gradient_check(g, 5e-4);
    table.add("gradient FD ratio h/(h/2)" + tag, ratio, 4.0, std::abs(ratio - 4.0), 0.5);
  }

  const double zero_rhs = stationary_scan(SpectralState::zero(Sigma::planar, n)).rhs_norm;
  table.add("rhs(0) sigma=0", zero_rhs, 0.0, zero_rhs, 1e-14);
  CoeffVector line(static_cast<std::size_t>(n));
  line[0] = 2.5;
  const double line_rhs = stationary_scan(SpectralState(Sigma::spherical, line)).rhs_norm;
  table.add("rhs(2.5 e_1) sigma=1", line_rhs, 0.0, line_rhs, 1e-14);
  if (n >= 2) {
    table.add_lower_bound("rhs(e_2) sigma=1 > 0", stationary_scan(make_psi_k(2, Sigma::spherical, n)).rhs_norm, 0.0);
  }
  return table.finish(std::cout);
}

int cmd_minimize(const RunConfig& cfg, Output& out) {
  const Sigma sigma = sigma_from_int(cfg.sigma);
  ConstraintTarget target;
  target.mode = parse_constraint_mode(cfg.constraint);
  const bool need_mass = target.mode != ConstraintMode::momentum_only;
  const bool need_momentum = target.mode != ConstraintMode::mass_only;
  if (need_mass && !cfg.mass_target) throw UsageError("minimize: --mass-target is required");
  if (need_momentum && !cfg.momentum_target) throw UsageError("minimize: --momentum-target is required");
  target.mass_target = cfg.mass_target.value_or(0.0);
  target.momentum_target = cfg.momentum_target.value_or(0.0);
  if (cfg.starts < 1) throw UsageError("minimize: --starts must be >= 1");

  MinimizerOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.seed = cfg.seed;
  opts.random_init = parse_random_options(cfg.random_options);

  std::optional<SpectralState> init;
  if (cfg.init != "random") init = build_initial(cfg).state;
  const int n = init ? init->n_modes() : cfg.n_modes;
  const Sigma run_sigma = init ? init->sigma() : sigma;

  json config = cfg.to_json();
  config["sigma"] = to_int(run_sigma);
  config["n_modes"] = n;
  out.emit(io::header_record("minimize", config));

  MinimizerResult result = [&] {
    if (init || cfg.starts == 1) return minimize_energy(run_sigma, n, target, init, opts);
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < cfg.starts; ++i) seeds.push_back(cfg.seed + static_cast<std::uint64_t>(i));
    return minimize_multistart(run_sigma, n, target, seeds, opts);
  }();
  out.emit(io::minimizer_record(result, target));
  if (!result.converged) {
    std::cerr << "minimize: stopped after " << result.iterations << " iterations with projected gradient "
              << result.gradient_norm << " > tol " << cfg.tol << '\n';
  }
  if (!cfg.save.empty()) io::write_snapshot(cfg.save, result.state);
  return 0;
}

int cmd_wave_residual(const RunConfig& cfg, Output& out) {
  const Initial init = build_initial(cfg);
  double omega = 0.0;
  if (cfg.phase_rate) {
    omega = *cfg.phase_rate;
  } else if (init.kind == InitKind::psi_k && cfg.speed == 0.0) {
    omega = init.k * (init.k - to_double(init.state.sigma()));
  } else {
    throw UsageError("wave-residual: --omega is required unless the profile is psi_k with c = 0");
  }
  json config = resolved_config(cfg, init.state);
  config["omega"] = omega;
  out.emit(io::header_record("wave-residual", config));
  out.emit(io::wave_record(wave_residual(init.state, cfg.speed, omega)));
  return 0;
}

int cmd_invariants(const RunConfig& cfg, Output& out) {
  const Initial init = build_initial(cfg);
  const SpectralState& s = init.state;
  out.emit(io::header_record("invariants", resolved_config(cfg, s)));
  json rec = io::report_record(0.0, make_report(s, cfg.hs));
  rec.erase("t");
  rec["record"] = "invariants";
  rec["E_lambda_form"] = energy_lambda_form(s);
  rec["E_quadrature"] = energy_quadrature(s, std::max(1024, 8 * s.n_modes()));
  rec["pairing_defect"] = pairing_check(s);
  const auto st = stationary_scan(s);
  rec["rhs_norm"] = st.rhs_norm;
  rec["stationary"] = st.stationary;
  rec["in_stationary_set"] = st.in_stationary_set;
  out.emit(rec);
  return 0;
}

int cmd_bench(const RunConfig& cfg, Output& out) {
  if (cfg.sizes.empty()) throw UsageError("bench: --sizes must not be empty");
  for (int n : cfg.sizes) {
    if (n < 1 || n > 512) throw UsageError("bench: sizes must lie in [1, 512]");
  }
  if (out.file_backed()) out.emit(io::header_record("bench", cfg.to_json()));
  const Sigma sigma = sigma_from_int(cfg.sigma);
  std::cout << std::left << std::setw(6) << "N" << std::setw(13) << "t_direct" << std::setw(13) << "t_fast"
            << std::setw(10) << "speedup" << "max_deviation\n";
  double worst = 0.0;
  for (int n : cfg.sizes) {
    const auto s = random_state(sigma, n, cfg.seed + static_cast<std::uint64_t>(n));
    const auto ref = c_sigma_direct(s);
    CubicWorkspace work(n);
    const double dev = max_rel_dev(c_sigma_fast(s, work).coeffs_full(), ref.coeffs_full());
    const double t_direct = seconds_per_call([&] { (void)c_sigma_direct(s); });
    const double t_fast = seconds_per_call([&] { (void)c_sigma_fast(s, work); });
    worst = std::max(worst, dev);
    std::cout << std::left << std::setw(6) << n << std::setw(13) << fixed(t_direct, 3) << std::setw(13)
              << fixed(t_fast, 3) << std::setw(10) << std::fixed << std::setprecision(2) << t_direct / t_fast
              << fixed(dev, 2) << '\n';
    if (out.file_backed()) out.emit({{"record", "bench"},
              {"N", n},
              {"t_direct", t_direct},
              {"t_fast", t_fast},
              {"speedup", t_direct / t_fast},
              {"max_deviation", dev}});
  }
  if (worst > 1e-11) {
    throw NumericalError("bench: max_deviation " + fixed(worst, 2) + " exceeds 1e-11");
  }
  return 0;
}

int cmd_selftest(const RunConfig& cfg, Output& out) {
  if (out.file_backed()) out.emit(io::header_record("selftest", cfg.to_json()));
  CheckTable table(out);

  const SpectralState ones(Sigma::planar, {1.0, 1.0});
  const auto cubic = c_sigma_fast(ones);
  const auto c = cubic.coeffs_full();
  const double c_dev = std::max({std::abs(c[0] - 3.0), std::abs(c[1] - 4.0), std::abs(c[2] - 1.0)});
  table.add("C_0(1,1) = (3,4,1)", c[1].real(), 4.0, c_dev, 1e-13);
  const auto d = rhs(ones);
  const double d_dev = std::max(std::abs(d.mode(1) - Complex(0.0, 3.0)), std::abs(d.mode(2) - Complex(0.0, 8.0)));
  table.add("rhs(1,1) = (3i,8i)", d.mode(2).imag(), 8.0, d_dev, 1e-13);

  const auto s = random_state(Sigma::spherical, 12, cfg.seed);
  const auto back = io::snapshot_from_json(io::snapshot_to_json(s));
  table.add("snapshot round trip", p_distance(back, s), 0.0, p_distance(back, s), 0.0);
  const auto grid = from_grid(to_grid(s, 48), 12, Sigma::spherical);
  table.add("grid round trip", p_distance(grid, s), 0.0, p_distance(grid, s) / p_norm(s.coeffs()), 1e-13);

  StepperConfig sc;
  sc.dt = 1e-3;
  sc.t_end = 1.0;
  const auto psi = evolve(make_psi_k(2, Sigma::planar, 4), sc);
  const double phase_err = std::abs(psi.mode(2) - std::polar(1.0, 4.0));
  table.add("psi_2 phase at t=1", std::arg(psi.mode(2)), std::arg(std::polar(1.0, 4.0)), phase_err, 1e-8);

  const auto probe = two_mode_phase_probe(1.0, 1.0, 2, 4, sc);
  table.add("two-mode rate (1,1,2)", probe.measured_rate, probe.derived_rate,
            std::abs(probe.measured_rate - probe.derived_rate), 1e-6);

  const double tau = 2.0 * kPi;
  const auto m = minimize_energy(Sigma::spherical, 6, {tau, tau, ConstraintMode::both}, std::nullopt, {});
  table.add("minimize sigma=1 (2pi,2pi)", m.energy, 0.0, std::abs(m.energy), 1e-8);
  return table.finish(std::cout);
}

}  // namespace filament::cli
