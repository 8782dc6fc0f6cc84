#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "filament/invariants.hpp"
#include "filament/minimizer.hpp"
#include "filament/spectral_state.hpp"
#include "filament/waves.hpp"

namespace filament::io {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// Normalization convention embedded in every output header.
inline constexpr const char* kConvention =
    "torus 2pi; d_x <-> ik; Lambda <-> |k|; P = 2pi sum|a_k|^2; M = 2pi sum|a_k|^2/k; "
    "C_sigma = P+[|u|^2 Lambda u - u Lambda|u|^2 - sigma|u|^2 u]";

/// {"sigma": 0|1, "n_modes": N, "coeffs": [[re, im], ...]}
json snapshot_to_json(const SpectralState& state);

/// Rejects missing fields, bad sigma, and coeff arrays whose length differs from n_modes.
SpectralState snapshot_from_json(const json& doc);

void write_snapshot(const std::filesystem::path& path, const SpectralState& state);
SpectralState read_snapshot(const std::filesystem::path& path);

/// Flat time-series record: t, E, P, M, a1_re, a1_im and "H^<s>" entries.
json report_record(double t, const InvariantReport& report);

json wave_record(const TravelingWaveSpec& spec);

json minimizer_record(const MinimizerResult& result, const ConstraintTarget& target);

json header_record(const std::string& command, const json& config);

json error_record(const std::string& kind, const std::string& message);

/// Shortest decimal form that round-trips (used for H^s keys).
std::string format_exponent(double s);

}  // namespace filament::io
