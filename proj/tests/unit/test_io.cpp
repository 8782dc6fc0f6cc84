#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "filament/errors.hpp"
#include "filament/io.hpp"
#include "filament/random_state.hpp"

using namespace filament;
using filament::io::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "filament_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("snapshots round-trip bit for bit") {
  const auto s = random_state(Sigma::spherical, 13, 5);
  const auto path = scratch("round.json");
  io::write_snapshot(path, s);
  const auto back = io::read_snapshot(path);
  CHECK(back.sigma() == Sigma::spherical);
  REQUIRE(back.n_modes() == 13);
  for (int k = 1; k <= 13; ++k) CHECK(back.mode(k) == s.mode(k));
}

TEST_CASE("snapshot layout") {
  const SpectralState s(Sigma::planar, {Complex(1.0, -2.0), 0.5});
  const json doc = io::snapshot_to_json(s);
  CHECK(doc["sigma"] == 0);
  CHECK(doc["n_modes"] == 2);
  CHECK(doc["coeffs"] == json::parse("[[1.0, -2.0], [0.5, 0.0]]"));
}

TEST_CASE("malformed snapshots are rejected") {
  const char* bad[] = {
      R"([1, 2])",
      R"({"n_modes": 1, "coeffs": [[1, 0]]})",
      R"({"sigma": 2, "n_modes": 1, "coeffs": [[1, 0]]})",
      R"({"sigma": 0.5, "n_modes": 1, "coeffs": [[1, 0]]})",
      R"({"sigma": 0, "n_modes": 0, "coeffs": []})",
      R"({"sigma": 0, "n_modes": 2, "coeffs": [[1, 0]]})",
      R"({"sigma": 0, "n_modes": 1, "coeffs": [[1, 0], [0, 1]]})",
      R"({"sigma": 0, "n_modes": 1, "coeffs": [[1]]})",
      R"({"sigma": 0, "n_modes": 1, "coeffs": [["1", 0]]})",
      R"({"sigma": 0, "n_modes": 1, "coeffs": [1, 0]})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(io::snapshot_from_json(json::parse(text)), UsageError);
  }
}

TEST_CASE("file errors are I/O errors, bad content is a usage error") {
  CHECK_THROWS_AS(io::read_snapshot(scratch("does_not_exist.json")), IoError);
  CHECK_THROWS_AS(io::write_snapshot(scratch("no_such_dir") / "x.json", SpectralState::zero(Sigma::planar, 1)),
                  IoError);
  const auto path = scratch("garbage.json");
  std::ofstream(path) << "{not json";
  CHECK_THROWS_AS(io::read_snapshot(path), UsageError);
}

TEST_CASE("records") {
  InvariantReport r;
  r.energy = 4.0;
  r.momentum = 6.0;
  r.mass = 3.0;
  r.a1 = Complex(1.0, -1.0);
  r.h_s_norms = {{0.5, 2.0}, {1.0, 3.0}};
  const json rec = io::report_record(0.25, r);
  CHECK(rec["t"] == 0.25);
  CHECK(rec["E"] == 4.0);
  CHECK(rec["a1_im"] == -1.0);
  CHECK(rec["H^0.5"] == 2.0);
  CHECK(rec["H^1"] == 3.0);

  const json head = io::header_record("simulate", {{"n_modes", 8}});
  CHECK(head["record"] == "header");
  CHECK(head["version"] == io::kVersion);
  CHECK(head["config"]["n_modes"] == 8);
  CHECK(head["convention"].get<std::string>().find("Lambda <-> |k|") != std::string::npos);

  const json err = io::error_record("usage", "bad flag");
  CHECK(err["record"] == "error");
  CHECK(err["kind"] == "usage");
}
