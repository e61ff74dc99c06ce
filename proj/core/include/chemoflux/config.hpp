#pragma once

#include <string>
#include <vector>

#include "chemoflux/analysis.hpp"
#include "chemoflux/model.hpp"
#include "chemoflux/picard.hpp"
#include "chemoflux/solver.hpp"

namespace chemoflux {

enum class RunMode { Simulate, Picard, Steady, Averages, Check };

std::string to_string(RunMode mode);

struct MeshConfig {
  int n_cells = 200;
};

struct OutputConfig {
  std::string dir = "out";
  bool csv = true;
  bool json = true;
  bool svg = false;
};

struct PicardRunConfig {
  std::vector<double> horizons = {0.025};
  int iterations = 6;
  int time_steps = 50;
};

struct SteadyRunConfig {
  SteadyProfileParams profile;
  int grid_points = 10000;
  bool relax = false;  // also run the pseudo-time oracle and compare
  double g1 = 0.05, g2 = 0.05;
  double mu_a = 1.0, mu_b = 1.0;
  double epsilon = 0.0, q = 0.0;
  int relax_cells = 200;
};

struct AveragesRunConfig {
  double t_end = 1.0;
  int samples = 200;
  bool compare = false;  // also simulate and report the trace error
};

/// Everything one invocation needs.  Defaults are applied at load and echoed
/// back by write_config, so parse(write(cfg)) reproduces cfg exactly.
struct RunConfig {
  RunMode mode = RunMode::Simulate;
  std::string preset;  // "" or "figure1"
  MeshConfig mesh;
  SolverConfig solver;
  Parameters params;
  ModelFunctions funcs;
  InitialData initial;
  OutputConfig output;
  PicardRunConfig picard;
  SteadyRunConfig steady;
  AveragesRunConfig averages;
};

/// Parse a JSON configuration.  Unknown keys are rejected, defaults filled
/// in, dotted --set overrides applied after the preset expansion, and the
/// model validated (the figure1 preset carries its documented waiver).
/// Throws ConfigError with a line reference on parse failures.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

RunConfig parse_config_file(const std::string& path,
                            const std::vector<std::string>& overrides = {});

/// Canonical serialization with every field spelled out (sorted keys).
std::string write_config(const RunConfig& config);

bool operator==(const RunConfig& lhs, const RunConfig& rhs);

}  // namespace chemoflux
