#include "filament/io.hpp"

#include <fstream>
#include <sstream>

#include "filament/errors.hpp"

namespace filament::io {

json snapshot_to_json(const SpectralState& state) {
  json coeffs = json::array();
  for (const Complex& c : state.coeffs()) coeffs.push_back({c.real(), c.imag()});
  return {{"sigma", to_int(state.sigma())}, {"n_modes", state.n_modes()}, {"coeffs", coeffs}};
}

SpectralState snapshot_from_json(const json& doc) {
  if (!doc.is_object()) throw UsageError("snapshot: expected an object");
  for (const char* key : {"sigma", "n_modes", "coeffs"}) {
    if (!doc.contains(key)) throw UsageError(std::string("snapshot: missing field '") + key + "'");
  }
  if (!doc["sigma"].is_number_integer()) throw UsageError("snapshot: sigma must be 0 or 1");
  const Sigma sigma = sigma_from_int(doc["sigma"].get<int>());
  if (!doc["n_modes"].is_number_integer() || doc["n_modes"].get<long long>() < 1) {
    throw UsageError("snapshot: n_modes must be a positive integer");
  }
  const auto n = doc["n_modes"].get<long long>();
  const json& arr = doc["coeffs"];
  if (!arr.is_array() || static_cast<long long>(arr.size()) != n) {
    throw UsageError("snapshot: coeffs must hold exactly n_modes entries");
  }
  CoeffVector coeffs;
  coeffs.reserve(arr.size());
  for (const json& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw UsageError("snapshot: each coefficient must be [re, im]");
    }
    coeffs.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return SpectralState(sigma, std::move(coeffs));
}

void write_snapshot(const std::filesystem::path& path, const SpectralState& state) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << snapshot_to_json(state).dump() << '\n';
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

SpectralState read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw UsageError("snapshot '" + path.string() + "': " + e.what());
  }
  return snapshot_from_json(doc);
}

std::string format_exponent(double s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

json report_record(double t, const InvariantReport& report) {
  json rec = {{"t", t},
              {"E", report.energy},
              {"P", report.momentum},
              {"M", report.mass},
              {"a1_re", report.a1.real()},
              {"a1_im", report.a1.imag()}};
  for (const auto& [s, value] : report.h_s_norms) rec["H^" + format_exponent(s)] = value;
  return rec;
}

json wave_record(const TravelingWaveSpec& spec) {
  return {{"record", "wave_residual"},
          {"c", spec.speed},
          {"omega", spec.phase_rate},
          {"residual", spec.residual},
          {"pairing_defect", spec.pairing_defect},
          {"profile", snapshot_to_json(spec.profile)}};
}

json minimizer_record(const MinimizerResult& result, const ConstraintTarget& target) {
  return {{"record", "minimizer"},
          {"mass_target", target.mass_target},
          {"momentum_target", target.momentum_target},
          {"constraint", to_string(target.mode)},
          {"energy", result.energy},
          {"lambda", result.lambda},
          {"mu", result.mu},
          {"el_residual", result.el_residual},
          {"mass_violation", result.constraint_violation[0]},
          {"momentum_violation", result.constraint_violation[1]},
          {"iterations", result.iterations},
          {"converged", result.converged},
          {"gradient_norm", result.gradient_norm},
          {"seed", result.seed},
          {"state", snapshot_to_json(result.state)}};
}

json header_record(const std::string& command, const json& config) {
  return {{"record", "header"},
          {"version", kVersion},
          {"command", command},
          {"convention", kConvention},
          {"config", config}};
}

json error_record(const std::string& kind, const std::string& message) {
  return {{"record", "error"}, {"kind", kind}, {"message", message}};
}

}  // namespace filament::io
