#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specrk/problems.hpp"
#include "specrk/step_control.hpp"

namespace specrk {

enum class StepMode { fixed, adaptive };

struct RunConfig {
  ProblemSpec problem;
  std::string integrator = "rk4";
  StepMode mode = StepMode::fixed;
  double dt = 1e-3;
  ControllerConfig controller;
  double t_end = 1.0;
  bool forcing = false;
  /// Empty disables file output.
  std::string output_dir;
  /// Simulated time between checkpoints; 0 disables them.
  double checkpoint_interval = 0.0;
  /// Checkpoint file to resume from; empty starts from the initial condition.
  std::string restart;

  /// Throws Error(config) on inconsistent settings.
  void validate() const;
};

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> warnings;
};

/// "section.key", value pairs applied after the file contents.
using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Parses INI text with sections [problem], [physics], [rayleigh_taylor],
/// [hit], [forcing], [time] and [output]. Unknown sections or keys, missing
/// required keys (problem.kind, time.t_end) and malformed values throw Error(config).
ParsedConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});
ParsedConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

/// Parses "32x32x32" or "128x512".
std::array<int, 3> parse_grid_shape(const std::string& text, int& dims);

/// One cell of a work-precision matrix: a fixed step or a tolerance.
struct BenchCell {
  std::string integrator;
  StepMode mode = StepMode::fixed;
  double setting = 0.0;
};

struct BenchConfig {
  RunConfig base;
  std::vector<BenchCell> cells;
  double reference_dt = 0.0;
  std::vector<std::string> warnings;
};

/// Run configuration plus a [bench] section with keys fixed (integrator list),
/// dts, adaptive (integrator list), tols and reference_dt.
BenchConfig parse_bench_config(std::string_view text, const ConfigOverrides& overrides = {});
BenchConfig load_bench_config(const std::string& path, const ConfigOverrides& overrides = {});

}  // namespace specrk
