#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "filament/io.hpp"

namespace filament::cli {

using io::json;

inline constexpr const char* kOutDirEnv = "FILAMENT_OUT_DIR";

/// Union of the per-subcommand parameters; fields a command ignores keep their defaults.
struct RunConfig {
  std::string command;
  int sigma = 0;
  bool sigma_given = false;
  int n_modes = 16;
  bool n_modes_given = false;
  std::optional<double> dt;
  double t_end = 1.0;
  std::string scheme = "rk4";
  std::uint64_t seed = 0;
  std::string init = "random";
  std::string random_options;
  std::string out;
  std::optional<double> mass_target;
  std::optional<double> momentum_target;
  std::string constraint = "both";
  double tol = 1e-9;
  int max_iter = 20000;
  int starts = 1;
  int sample_every = 1;
  int snapshot_every = 0;
  std::string save;
  std::vector<double> hs;
  double speed = 0.0;
  std::optional<double> phase_rate;
  int samples = 10;
  std::vector<int> sizes = {8, 16, 32, 64, 128};

  json to_json() const;
};

/// Where records go: --out, else $FILAMENT_OUT_DIR/<command>.jsonl, else stdout.
class Output {
 public:
  Output(const std::string& command, const std::string& out_path);

  void emit(const json& record);
  bool file_backed() const noexcept { return file_.is_open(); }
  /// Directory for side files such as snapshots.
  const std::filesystem::path& directory() const noexcept { return dir_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
  std::filesystem::path dir_;
};

int cmd_simulate(const RunConfig& cfg, Output& out);
int cmd_verify(const RunConfig& cfg, Output& out);
int cmd_minimize(const RunConfig& cfg, Output& out);
int cmd_wave_residual(const RunConfig& cfg, Output& out);
int cmd_invariants(const RunConfig& cfg, Output& out);
int cmd_bench(const RunConfig& cfg, Output& out);
int cmd_selftest(const RunConfig& cfg, Output& out);

}  // namespace filament::cli
