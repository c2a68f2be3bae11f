#include "specrk/work_precision.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <tuple>

#include "specrk/error.hpp"

namespace specrk {

namespace {

TimeSeries eps_series(const std::vector<DiagnosticsRecord>& records) {
  TimeSeries s;
  for (const auto& r : records) {
    s.t.push_back(r.t);
    s.value.push_back(r.eps);
  }
  return s;
}

RunConfig cell_config(const RunConfig& base, const BenchCell& cell) {
  RunConfig c = base;
  c.integrator = cell.integrator;
  c.mode = cell.mode;
  c.output_dir.clear();
  c.checkpoint_interval = 0.0;
  if (cell.mode == StepMode::fixed) {
    c.dt = cell.setting;
  } else {
    c.controller.tol_abs = c.controller.tol_rel = cell.setting;
    c.controller.embedded_order = make_pair(cell.integrator).embedded_order;
  }
  return c;
}

}  // namespace

RunResult run_reference(const RunConfig& base, double reference_dt, const std::vector<BenchCell>& cells) {
  for (const BenchCell& cell : cells) {
    if (cell.mode == StepMode::fixed && reference_dt > cell.setting / 10.0 * (1.0 + 1e-12)) {
      fail(ErrorCategory::invalid_argument,
           "reference step must be at most a tenth of the smallest compared step");
    }
  }
  return run_simulation(cell_config(base, {"rk4", StepMode::fixed, reference_dt}));
}

WorkPrecisionPoint evaluate_against(const BenchCell& cell, const RunResult& run,
                                    const RunResult& reference) {
  WorkPrecisionPoint p;
  p.integrator = cell.integrator;
  p.mode = cell.mode;
  p.setting = cell.setting;
  p.rhs_evals = run.final_state.rhs_evals;
  p.rejections = run.final_state.rejections;
  p.eps_error = compare_series(eps_series(run.records), eps_series(reference.records));
  p.l2_error = field_error_norms(run.final_state.flow.velocity_field(),
                                 reference.final_state.flow.velocity_field())
                   .l2_rel;
  return p;
}

std::vector<WorkPrecisionPoint> work_precision(const RunConfig& base, const std::vector<BenchCell>& cells,
                                               const RunResult& reference) {
  std::vector<WorkPrecisionPoint> points;
  for (const BenchCell& cell : cells) {
    try {
      points.push_back(evaluate_against(cell, run_simulation(cell_config(base, cell)), reference));
    } catch (const Error& e) {
      WorkPrecisionPoint p;
      p.integrator = cell.integrator;
      p.mode = cell.mode;
      p.setting = cell.setting;
      p.ok = false;
      p.failure = std::string(to_string(e.category())) + ": " + e.what();
      points.push_back(p);
    }
  }
  std::stable_sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return std::tie(a.integrator, a.mode, a.setting) < std::tie(b.integrator, b.mode, b.setting);
  });
  return points;
}

void write_work_precision_csv(std::ostream& out, const std::vector<WorkPrecisionPoint>& points) {
  // rhs_evals counts every evaluation, including stages of rejected steps.
  out << "integrator,mode,setting,rhs_evals,rejections,eps_error,l2_error,status\n";
  for (const auto& p : points) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%s,%.16e,%lld,%lld,%.16e,%.16e,", p.integrator.c_str(),
                  p.mode == StepMode::fixed ? "fixed" : "adaptive", p.setting, p.rhs_evals,
                  p.rejections, p.eps_error, p.l2_error);
    std::string status = p.ok ? std::string("ok") : "failed: " + p.failure;
    std::replace(status.begin(), status.end(), ',', ';');
    out << buf << status << '\n';
  }
}

}  // namespace specrk
