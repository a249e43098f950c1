#pragma once

// Scenario and sweep definitions read from a config file.
//
//   [run]        protocol, optional dt, optional norm_step
//   [levels]     ground / intermediate / target level names (mercury default)
//   [sacs] [stirap] [fstirap] [half_scrap]   protocol parameters
//   [sweep.detuning] [sweep.contour] [sweep.surface]   sweep definitions
//
// Drive strengths are given either as Rabi frequencies (rad/ns) or as laser
// intensities, which are converted through the transition table.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sacs/config.hpp"
#include "sacs/protocols.hpp"
#include "sacs/scenario.hpp"
#include "sacs/sweeps.hpp"

namespace sacs {

struct DetuningSweepSpec {
  Axis axis;
};

struct ContourSweepSpec {
  ContourParams params;
  Axis stokes;
  Axis delay;
};

struct SurfaceSpec {
  double delta2 = 1.0;  // rad/ns
  Axis omega;           // units of delta2
  Axis stark;           // units of delta2
  double level = 1.5;   // gap level line, units of delta2
  std::pair<double, double> anchor{0.0, 1.5};
};

struct WeightSweepSpec {
  Axis ratio;
};

struct RunSpec {
  std::optional<ScenarioConfig> scenario;
  std::optional<SacsParams> sacs;  // when the scenario is a SACS sequence
  std::optional<double> dt;
  double norm_step = kDefaultNormStep;

  std::optional<DetuningSweepSpec> detuning;
  std::optional<ContourSweepSpec> contour;
  std::optional<SurfaceSpec> surface;
  std::optional<WeightSweepSpec> weights;

  std::string config_hash;  // FNV-1a of the file contents
};

/// Builds a RunSpec; the transition table at `table_path` is read only when
/// an intensity has to be converted. Throws ConfigError or PhysicsError.
RunSpec build_run_spec(const Config& cfg, const std::filesystem::path& table_path);
RunSpec load_run_spec(const std::filesystem::path& config_path, const std::filesystem::path& table_path);

/// Default transition table location (build tree or install prefix).
std::filesystem::path default_table_path();

}  // namespace sacs
