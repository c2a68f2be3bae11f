#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "specrk/config.hpp"
#include "specrk/simulation.hpp"

namespace specrk {

struct WorkPrecisionPoint {
  std::string integrator;
  StepMode mode = StepMode::fixed;
  /// Fixed step size or tolerance.
  double setting = 0.0;
  long long rhs_evals = 0;
  long long rejections = 0;
  /// max_i |eps_i - eps_ref(t_i)| with the reference interpolated quadratically.
  double eps_error = 0.0;
  /// Relative L2 error of the final velocity against the reference.
  double l2_error = 0.0;
  bool ok = true;
  std::string failure;
};

/// Reference run: RK4 with fixed step reference_dt. Throws
/// Error(invalid_argument) when reference_dt exceeds a tenth of the smallest
/// fixed step among the cells.
RunResult run_reference(const RunConfig& base, double reference_dt,
                        const std::vector<BenchCell>& cells);

/// Runs every cell against the reference. A failing cell becomes a point with
/// ok = false. Output is sorted by integrator, then mode, then setting.
std::vector<WorkPrecisionPoint> work_precision(const RunConfig& base, const std::vector<BenchCell>& cells,
                                               const RunResult& reference);

WorkPrecisionPoint evaluate_against(const BenchCell& cell, const RunResult& run,
                                    const RunResult& reference);

void write_work_precision_csv(std::ostream& out, const std::vector<WorkPrecisionPoint>& points);

}  // namespace specrk
