#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specrk/config.hpp"
#include "specrk/diagnostics.hpp"
#include "specrk/runge_kutta.hpp"

namespace specrk {

/// Everything needed to continue a run exactly where it stopped.
struct SimulationState {
  FlowState flow;
  /// Step size planned for the next step (adaptive) or the fixed step.
  double h = 0.0;
  /// Step that produced `flow` (0 before the first step).
  double h_last = 0.0;
  bool prev_rejected = false;
  long long rhs_evals = 0;
  long long rejections = 0;
  long long accepted_steps = 0;
  /// Text form of the generator state after initialization.
  std::string rng_state;
  StepperHistory history;
};

struct RunResult {
  std::vector<DiagnosticsRecord> records;
  SimulationState final_state;
};

struct RunHooks {
  /// Called for every record as soon as it is complete.
  std::function<void(const DiagnosticsRecord&)> on_record;
  /// Called after each accepted step (and forcing) with the current state.
  std::function<void(const SimulationState&)> on_step;
};

/// Builds the initial state for a config (initial condition, step size, RNG).
SimulationState initial_state(const RunConfig& config);

/// Advances from `start` (or the config's initial condition) to config.t_end.
///
/// One record per state: the initial one plus one per accepted step. The
/// dissipation rate of a record reuses the first stage of the following step;
/// the final record costs one extra evaluation that is not counted in rhs_evals.
/// With config.output_dir set, writes diagnostics.csv there, and checkpoints
/// every config.checkpoint_interval of simulated time plus final.ckpt.
RunResult run_simulation(const RunConfig& config, std::optional<SimulationState> start = std::nullopt,
                         const RunHooks& hooks = {});

/// Loads config.restart when set, otherwise builds the initial state, then runs.
RunResult run_from_config(const RunConfig& config, const RunHooks& hooks = {});

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const DiagnosticsRecord& record);
void write_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_csv(const std::string& path);

}  // namespace specrk
