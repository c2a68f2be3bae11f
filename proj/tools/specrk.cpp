#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "specrk/checkpoint.hpp"
#include "specrk/config.hpp"
#include "specrk/diagnostics.hpp"
#include "specrk/error.hpp"
#include "specrk/simulation.hpp"
#include "specrk/work_precision.hpp"

using namespace specrk;

namespace {

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Overrides {
  std::optional<std::string> integrator, grid, out;
  std::optional<double> tol, dt, t_end;

  ConfigOverrides pairs() const {
    ConfigOverrides o;
    if (integrator) o.emplace_back("time.integrator", *integrator);
    if (tol) {
      o.emplace_back("time.mode", "adaptive");
      o.emplace_back("time.tol", number(*tol));
    }
    if (dt) {
      o.emplace_back("time.mode", "fixed");
      o.emplace_back("time.dt", number(*dt));
    }
    if (t_end) o.emplace_back("time.t_end", number(*t_end));
    if (grid) o.emplace_back("problem.grid", *grid);
    if (out) o.emplace_back("output.dir", *out);
    return o;
  }
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--integrator", o.integrator, "rk4, dp5, bs5, kcl5 or ab2");
  cmd->add_option("--tol", o.tol, "Tolerance; switches to adaptive stepping");
  cmd->add_option("--dt", o.dt, "Fixed step; switches to fixed stepping");
  cmd->add_option("--t-end", o.t_end, "Final time");
  cmd->add_option("--grid", o.grid, "Grid such as 32x32x32 or 128x512");
  cmd->add_option("--out", o.out, "Output directory");
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int run(const std::string& path, const Overrides& o) {
  const ParsedConfig parsed = load_config(path, o.pairs());
  print_warnings(parsed.warnings);
  const RunConfig& c = parsed.config;
  if (!c.output_dir.empty()) std::filesystem::create_directories(c.output_dir);
  const RunResult r = run_from_config(c);
  const DiagnosticsRecord& last = r.records.back();
  std::printf("t=%.17g E_kin=%.17g eps=%.17g accepted=%lld rhs_evals=%lld rejections=%lld\n", last.t, last.e_kin,
              last.eps, r.final_state.accepted_steps, r.final_state.rhs_evals, r.final_state.rejections);
  return 0;
}

int bench(const std::string& path, const Overrides& o) {
  const BenchConfig b = load_bench_config(path, o.pairs());
  print_warnings(b.warnings);
  RunConfig base = b.base;
  const std::string out_dir = base.output_dir;
  base.output_dir.clear();
  std::fprintf(stderr, "reference: rk4 dt=%g\n", b.reference_dt);
  const RunResult ref = run_reference(base, b.reference_dt, b.cells);
  const auto points = work_precision(base, b.cells, ref);
  if (out_dir.empty()) {
    write_work_precision_csv(std::cout, points);
  } else {
    std::filesystem::create_directories(out_dir);
    const auto file = std::filesystem::path(out_dir) / "work_precision.csv";
    std::ofstream out(file);
    if (!out) fail(ErrorCategory::io, "cannot write " + file.string());
    write_work_precision_csv(out, points);
    std::printf("%s\n", file.string().c_str());
  }
  return 0;
}

int spectrum(const std::string& path, const std::optional<std::string>& out_file) {
  const SimulationState s = read_checkpoint(path);
  const SpectrumRecord sp = energy_spectrum(s.flow.velocity_field());
  std::ofstream file;
  if (out_file) {
    file.open(*out_file);
    if (!file) fail(ErrorCategory::io, "cannot write " + *out_file);
  }
  std::ostream& out = out_file ? file : std::cout;
  out << "k,E\n";
  char line[64];
  for (std::size_t i = 0; i < sp.shell.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", sp.shell[i], sp.energy[i]);
    out << line;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral Navier-Stokes solver with embedded Runge-Kutta time stepping"};
  app.require_subcommand(1);

  std::string config_path, checkpoint_path;
  Overrides run_o, bench_o;
  std::optional<std::string> spectrum_out;

  auto* run_cmd = app.add_subcommand("run", "Run a simulation from an INI config");
  run_cmd->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  add_override_flags(run_cmd, run_o);

  auto* bench_cmd = app.add_subcommand("bench", "Work-precision matrix against an RK4 reference");
  bench_cmd->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  add_override_flags(bench_cmd, bench_o);

  auto* spec_cmd = app.add_subcommand("spectrum", "Shell energy spectrum of a checkpoint as CSV");
  spec_cmd->add_option("checkpoint", checkpoint_path)->required();
  spec_cmd->add_option("--out", spectrum_out, "Write the CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return run(config_path, run_o);
    if (bench_cmd->parsed()) return bench(config_path, bench_o);
    return spectrum(checkpoint_path, spectrum_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s: %s\n", std::string(to_string(e.category())).c_str(), e.what());
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: io: %s\n", e.what());
    return exit_code(ErrorCategory::io);
  }
}
