#include "specrk/simulation.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "specrk/checkpoint.hpp"
#include "specrk/error.hpp"
#include "specrk/step_control.hpp"

namespace specrk {

SimulationState initial_state(const RunConfig& config) {
  std::mt19937_64 rng(config.problem.seed);
  SimulationState s;
  s.flow = make_initial_state(config.problem, rng);
  std::ostringstream os;
  os << rng;
  s.rng_state = os.str();
  s.h = config.mode == StepMode::fixed ? config.dt : config.controller.h0;
  return s;
}

namespace {

std::string checkpoint_name(long long index) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "checkpoint_%04lld.ckpt", index);
  return buf;
}

}  // namespace

RunResult run_simulation(const RunConfig& config, std::optional<SimulationState> start,
                         const RunHooks& hooks) {
  config.validate();
  RunResult result;
  SimulationState& s = result.final_state;
  s = start ? std::move(*start) : initial_state(config);
  if (!(s.flow.grid() == config.problem.grid) || s.flow.has_density != config.problem.with_density()) {
    fail(ErrorCategory::config, "starting state does not match the configured grid or system");
  }
  if (config.mode == StepMode::fixed) s.h = config.dt;

  const GridSpec& grid = s.flow.grid();
  const PhysParams& params = config.problem.params;
  FlowRhs rhs(grid, params, s.flow.has_density);
  const OdeRhs f = [&rhs](double, std::span<const Complex> y, std::span<Complex> dy) { rhs(y, dy); };

  const std::size_t modes = grid.spectral_size();
  const std::size_t size = s.flow.fields.size();
  const std::size_t velocity_size = s.flow.velocity_components() * modes;
  auto y = s.flow.fields.data();
  std::vector<Complex> y_start(size);
  std::vector<Complex> candidate(size);

  std::unique_ptr<Stepper> fixed;
  std::optional<AdaptiveIntegrator> adaptive;
  Stepper* stepper = nullptr;
  if (config.mode == StepMode::fixed) {
    fixed = make_stepper(config.integrator, size);
    stepper = fixed.get();
  } else {
    adaptive.emplace(make_pair(config.integrator), config.controller, modes,
                     s.flow.fields.components());
    adaptive->state().h = s.h;
    adaptive->state().prev_rejected = s.prev_rejected;
    stepper = &adaptive->stepper();
  }
  stepper->restore(s.history);

  std::ofstream csv;
  if (!config.output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) fail(ErrorCategory::io, "cannot create output directory '" + config.output_dir + "'");
    const auto path = std::filesystem::path(config.output_dir) / "diagnostics.csv";
    csv.open(path);
    if (!csv) fail(ErrorCategory::io, "cannot write '" + path.string() + "'");
    write_csv_header(csv);
  }
  const auto emit = [&](const DiagnosticsRecord& r) {
    result.records.push_back(r);
    if (csv.is_open()) write_csv_row(csv, r);
    if (hooks.on_record) hooks.on_record(r);
  };
  const auto snapshot = [&](const std::string& name) {
    if (config.output_dir.empty()) return;
    s.history = stepper->history();
    if (adaptive) s.prev_rejected = adaptive->state().prev_rejected;
    write_checkpoint(s, (std::filesystem::path(config.output_dir) / name).string());
  };

  const double t_end = config.t_end;
  double& t = s.flow.time;
  DiagnosticsRecord pending{t, s.h_last, kinetic_energy(s.flow.velocity(), grid), 0.0, s.rhs_evals,
                            s.rejections};
  const double interval = config.checkpoint_interval;
  double next_checkpoint = interval > 0.0 ? (std::floor(t / interval + 1e-9) + 1.0) * interval
                                          : std::numeric_limits<double>::infinity();
  long long checkpoint_index = 0;

  while (t < t_end) {
    std::copy(y.begin(), y.end(), y_start.begin());
    const double energy_at_start = pending.e_kin;
    double h_used;
    if (adaptive) {
      const AdvanceResult a = adaptive->advance(f, t, y, t_end);
      s.rhs_evals += a.rhs_evals;
      s.rejections += a.rejections;
      s.h = adaptive->state().h;
      h_used = a.h_used;
    } else {
      double h_try = s.h;
      const bool clamped = t + h_try * (1.0 + 1e-10) >= t_end;
      if (clamped) h_try = t_end - t;
      s.rhs_evals += stepper->step(f, t, y, h_try, candidate, {}).rhs_evals;
      std::copy(candidate.begin(), candidate.end(), y.begin());
      stepper->accept();
      t = clamped ? t_end : t + h_try;
      h_used = h_try;
    }
    pending.eps = dissipation_rate(std::span<const Complex>(y_start).first(velocity_size),
                                   stepper->start_derivative().first(velocity_size), grid);
    emit(pending);

    ++s.accepted_steps;
    s.h_last = h_used;
    if (config.forcing) {
      apply_forcing(s.flow, params, energy_at_start);
      stepper->invalidate();
    }
    pending = {t, h_used, kinetic_energy(s.flow.velocity(), grid), 0.0, s.rhs_evals, s.rejections};
    if (hooks.on_step) hooks.on_step(s);
    if (t >= next_checkpoint * (1.0 - 1e-12)) {
      snapshot(checkpoint_name(checkpoint_index++));
      while (t >= next_checkpoint * (1.0 - 1e-12)) next_checkpoint += interval;
    }
  }

  std::vector<Complex> f_end(size);
  rhs(y, f_end);
  pending.eps = dissipation_rate(std::span<const Complex>(y).first(velocity_size),
                                 std::span<const Complex>(f_end).first(velocity_size), grid);
  emit(pending);

  s.history = stepper->history();
  if (adaptive) s.prev_rejected = adaptive->state().prev_rejected;
  snapshot("final.ckpt");
  return result;
}

RunResult run_from_config(const RunConfig& config, const RunHooks& hooks) {
  if (config.restart.empty()) return run_simulation(config, std::nullopt, hooks);
  return run_simulation(config, read_checkpoint(config.restart), hooks);
}

void write_csv_header(std::ostream& out) { out << "t,h,E_kin,eps,rhs_evals_cum,rejections_cum\n"; }

void write_csv_row(std::ostream& out, const DiagnosticsRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.16e,%.16e,%.16e,%.16e,%lld,%lld\n", r.t, r.h, r.e_kin, r.eps,
                r.rhs_evals, r.rejections);
  out << buf;
}

void write_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records) {
  std::ofstream out(path);
  if (!out) fail(ErrorCategory::io, "cannot write '" + path + "'");
  write_csv_header(out);
  for (const auto& r : records) write_csv_row(out, r);
}

std::vector<DiagnosticsRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCategory::io, "cannot open '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (line != "t,h,E_kin,eps,rhs_evals_cum,rejections_cum") {
    fail(ErrorCategory::format, "'" + path + "' is not a diagnostics CSV");
  }
  std::vector<DiagnosticsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    DiagnosticsRecord r;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lld,%lld", &r.t, &r.h, &r.e_kin, &r.eps,
                    &r.rhs_evals, &r.rejections) != 6) {
      fail(ErrorCategory::format, "malformed diagnostics row: " + line);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace specrk
