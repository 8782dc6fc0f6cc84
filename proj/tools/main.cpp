#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "commands.hpp"
#include "filament/errors.hpp"

using namespace filament;
using filament::cli::RunConfig;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

void report(const std::string& kind, const std::string& message, cli::Output* out) {
  const auto rec = io::error_record(kind, message);
  std::cerr << rec.dump() << '\n';
  if (out != nullptr && out->file_backed()) {
    try {
      out->emit(rec);
    } catch (const IoError&) {
    }
  }
}

void add_state_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--sigma", cfg.sigma, "0 planar, 1 spherical")->check(CLI::IsMember({0, 1}));
  sub->add_option("--n-modes", cfg.n_modes, "number of Fourier modes N")->check(CLI::Range(1, 1 << 16));
  sub->add_option("--seed", cfg.seed, "seed for random data");
  sub->add_option("--init", cfg.init, "psi_k:<k> | two_mode:<A>:<B>:<k> | random | file:<path>");
  sub->add_option("--random-options", cfg.random_options, "decay=<d>,amplitude=<a>,p_norm=<r>");
}

void add_time_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--dt", cfg.dt, "time step (default min(1e-3, 0.1/N^2))")->check(CLI::PositiveNumber);
  sub->add_option("--t-end", cfg.t_end, "final time")->check(CLI::PositiveNumber);
  sub->add_option("--scheme", cfg.scheme, "rk4 or midpoint")->check(CLI::IsMember({"rk4", "midpoint"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Galerkin simulator and variational toolkit for the filamentation equation"};
  app.set_version_flag("--version", std::string(io::kVersion));
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--out", cfg.out, "output file (default $FILAMENT_OUT_DIR/<command>.jsonl, else stdout)");

  auto* simulate = app.add_subcommand("simulate", "integrate the truncated flow and stream invariants");
  add_state_options(simulate, cfg);
  add_time_options(simulate, cfg);
  simulate->add_option("--sample-every", cfg.sample_every, "steps between samples")->check(CLI::PositiveNumber);
  simulate->add_option("--snapshot-every", cfg.snapshot_every, "steps between snapshot files (0 = none)")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--hs", cfg.hs, "Sobolev exponents to report")->delimiter(',');
  simulate->add_option("--save", cfg.save, "write the final state to this snapshot file");

  auto* verify = app.add_subcommand("verify", "run the identity battery and print a pass/fail table");
  verify->add_option("--n-modes", cfg.n_modes, "modes used for random states")->check(CLI::Range(1, 128));
  verify->add_option("--seed", cfg.seed, "first seed");
  verify->add_option("--samples", cfg.samples, "random states per sigma")->check(CLI::PositiveNumber);

  auto* minimize = app.add_subcommand("minimize", "minimize the energy at fixed mass and momentum");
  add_state_options(minimize, cfg);
  minimize->add_option("--mass-target", cfg.mass_target, "M*")->check(CLI::PositiveNumber);
  minimize->add_option("--momentum-target", cfg.momentum_target, "P*")->check(CLI::PositiveNumber);
  minimize->add_option("--constraint", cfg.constraint, "both | mass_only | momentum_only")
      ->check(CLI::IsMember({"both", "mass_only", "momentum_only"}));
  minimize->add_option("--tol", cfg.tol, "projected-gradient tolerance")->check(CLI::PositiveNumber);
  minimize->add_option("--max-iter", cfg.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  minimize->add_option("--starts", cfg.starts, "seeded starts run concurrently")->check(CLI::PositiveNumber);
  minimize->add_option("--save", cfg.save, "write the minimizer to this snapshot file");

  auto* wave = app.add_subcommand("wave-residual", "residual of the traveling-wave profile equation");
  add_state_options(wave, cfg);
  wave->add_option("--c", cfg.speed, "speed c");
  wave->add_option("--omega", cfg.phase_rate, "phase rate omega");

  auto* invariants = app.add_subcommand("invariants", "energy, momentum, mass and diagnostics of a state");
  add_state_options(invariants, cfg);
  invariants->add_option("--hs", cfg.hs, "Sobolev exponents to report")->delimiter(',');

  auto* bench = app.add_subcommand("bench", "time the direct and FFT nonlinearity routes");
  bench->add_option("--sizes", cfg.sizes, "mode counts")->delimiter(',');
  bench->add_option("--sigma", cfg.sigma, "0 planar, 1 spherical")->check(CLI::IsMember({0, 1}));
  bench->add_option("--seed", cfg.seed, "seed for random data");

  auto* selftest = app.add_subcommand("selftest", "quick sanity checks");
  selftest->add_option("--seed", cfg.seed, "seed for random data");

  for (CLI::App* sub : app.get_subcommands({})) {
    sub->add_option("--out", cfg.out, "output file (default $FILAMENT_OUT_DIR/<command>.jsonl, else stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report("usage", e.what(), nullptr);
    return kValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  const auto given = [chosen](const std::string& name) {
    const CLI::Option* opt = chosen->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  cfg.sigma_given = given("--sigma");
  cfg.n_modes_given = given("--n-modes");

  std::unique_ptr<cli::Output> out;
  try {
    out = std::make_unique<cli::Output>(cfg.command, cfg.out);
    if (cfg.command == "simulate") return cli::cmd_simulate(cfg, *out);
    if (cfg.command == "verify") return cli::cmd_verify(cfg, *out);
    if (cfg.command == "minimize") return cli::cmd_minimize(cfg, *out);
    if (cfg.command == "wave-residual") return cli::cmd_wave_residual(cfg, *out);
    if (cfg.command == "invariants") return cli::cmd_invariants(cfg, *out);
    if (cfg.command == "bench") return cli::cmd_bench(cfg, *out);
    return cli::cmd_selftest(cfg, *out);
  } catch (const UsageError& e) {
    report("usage", e.what(), out.get());
    return kValidation;
  } catch (const StepFailure& e) {
    report("step_failure", e.what(), out.get());
    return kNumerical;
  } catch (const ProjectionFailure& e) {
    report("projection_failure", e.what(), out.get());
    return kNumerical;
  } catch (const NumericalError& e) {
    report("numerical", e.what(), out.get());
    return kNumerical;
  } catch (const IoError& e) {
    report("io", e.what(), out.get());
    return kIo;
  } catch (const InternalError& e) {
    report("internal", e.what(), out.get());
    return kNumerical;
  }
}
