#include "specrk/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "specrk/error.hpp"

namespace specrk {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& run_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"problem", {"kind", "grid", "seed"}},
      {"physics", {"reynolds", "richardson", "prandtl", "zero_mean_velocity"}},
      {"rayleigh_taylor", {"delta_rho", "z0", "amplitude", "mode"}},
      {"hit", {"a", "target_energy", "amplitude_power"}},
      {"forcing", {"enabled", "cutoff"}},
      {"time",
       {"integrator", "mode", "dt", "t_end", "tol", "tol_abs", "tol_rel", "h0", "h_min", "safety",
        "shrink_floor", "growth_cap"}},
      {"output", {"dir", "checkpoint_interval", "restart"}},
  };
  return keys;
}

const std::set<std::string> bench_keys{"fixed", "dts", "adaptive", "tols", "reference_dt"};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(ErrorCategory::config, key + ": expected a number, got '" + raw + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(ErrorCategory::config, key + ": expected an integer, got '" + raw + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  fail(ErrorCategory::config, key + ": expected a boolean, got '" + raw + "'");
}

std::vector<std::string> to_list(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> text(const std::string& path) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
    if (!v) return std::nullopt;
    return trim(*v);
  }
  void number(const std::string& path, double& out) const {
    if (auto v = text(path)) out = to_double(path, *v);
  }
  void flag(const std::string& path, bool& out) const {
    if (auto v = text(path)) out = to_bool(path, *v);
  }

 private:
  const pt::ptree& tree_;
};

pt::ptree read_tree(std::string_view text, const ConfigOverrides& overrides) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorCategory::config, std::string("malformed config: ") + e.message() + " (line " +
                                    std::to_string(e.line()) + ")");
  }
  for (const auto& [path, value] : overrides) {
    if (path.find('.') == std::string::npos) {
      fail(ErrorCategory::config, "override '" + path + "' must be section.key");
    }
    tree.put(pt::ptree::path_type(path, '.'), value);
  }
  return tree;
}

void check_keys(const pt::ptree& tree, bool allow_bench) {
  for (const auto& [section, body] : tree) {
    if (body.empty()) fail(ErrorCategory::config, "key '" + section + "' is outside any section");
    const std::set<std::string>* allowed = nullptr;
    if (allow_bench && section == "bench") {
      allowed = &bench_keys;
    } else if (auto it = run_keys().find(section); it != run_keys().end()) {
      allowed = &it->second;
    }
    if (allowed == nullptr) fail(ErrorCategory::config, "unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (allowed->count(key) == 0) {
        fail(ErrorCategory::config, "unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
}

void check_tolerance(const char* name, double tol, std::vector<std::string>& warnings) {
  if (tol < 1e-10 || tol > 1e-2) {
    std::ostringstream msg;
    msg << "time." << name << " = " << tol << " lies outside the tested range [1e-10, 1e-2]";
    warnings.push_back(msg.str());
  }
}

ParsedConfig build_run_config(const pt::ptree& tree) {
  const Reader r(tree);
  ParsedConfig parsed;
  RunConfig& c = parsed.config;

  const auto kind = r.text("problem.kind");
  if (!kind) fail(ErrorCategory::config, "missing required key problem.kind");
  c.problem.kind = parse_problem_kind(*kind);
  if (!r.text("time.t_end")) fail(ErrorCategory::config, "missing required key time.t_end");

  int dims = 3;
  std::array<int, 3> n{32, 32, 32};
  if (c.problem.kind == ProblemKind::rayleigh_taylor) {
    dims = 2;
    n = {128, 512, 1};
  }
  if (auto g = r.text("problem.grid")) n = parse_grid_shape(*g, dims);
  try {
    if (c.problem.kind == ProblemKind::rayleigh_taylor) {
      c.problem.grid = rayleigh_taylor_grid(dims, n[0], n[static_cast<std::size_t>(dims - 1)]);
      if (dims == 3 && n[0] != n[1]) {
        fail(ErrorCategory::config, "rayleigh_taylor: horizontal axes must have equal size");
      }
    } else {
      c.problem.grid = GridSpec(dims, n);
    }
  } catch (const Error& e) {
    fail(ErrorCategory::config, std::string("problem.grid: ") + e.what());
  }
  if (auto s = r.text("problem.seed")) {
    const long long seed = to_integer("problem.seed", *s);
    if (seed < 0) fail(ErrorCategory::config, "problem.seed must be non-negative");
    c.problem.seed = static_cast<std::uint64_t>(seed);
  }

  PhysParams& p = c.problem.params;
  r.number("physics.reynolds", p.reynolds);
  r.number("physics.richardson", p.richardson);
  r.number("physics.prandtl", p.prandtl);
  r.flag("physics.zero_mean_velocity", p.zero_mean_velocity);

  RayleighTaylorSpec& rt = c.problem.rt;
  r.number("rayleigh_taylor.delta_rho", rt.delta_rho);
  if (auto v = r.text("rayleigh_taylor.z0")) rt.z0 = to_double("rayleigh_taylor.z0", *v);
  if (auto v = r.text("rayleigh_taylor.amplitude")) rt.amplitude = to_double("rayleigh_taylor.amplitude", *v);
  if (auto v = r.text("rayleigh_taylor.mode")) rt.mode = static_cast<int>(to_integer("rayleigh_taylor.mode", *v));

  HitSpec& hit = c.problem.hit;
  r.number("hit.a", hit.a);
  r.number("hit.target_energy", hit.target_energy);
  r.number("hit.amplitude_power", hit.amplitude_power);

  r.flag("forcing.enabled", c.forcing);
  r.number("forcing.cutoff", p.forcing_cutoff);

  if (auto v = r.text("time.integrator")) c.integrator = *v;
  if (auto v = r.text("time.mode")) {
    if (*v == "fixed") {
      c.mode = StepMode::fixed;
    } else if (*v == "adaptive") {
      c.mode = StepMode::adaptive;
    } else {
      fail(ErrorCategory::config, "time.mode must be 'fixed' or 'adaptive'");
    }
  }
  r.number("time.dt", c.dt);
  r.number("time.t_end", c.t_end);
  ControllerConfig& cc = c.controller;
  if (auto v = r.text("time.tol")) cc.tol_abs = cc.tol_rel = to_double("time.tol", *v);
  r.number("time.tol_abs", cc.tol_abs);
  r.number("time.tol_rel", cc.tol_rel);
  r.number("time.h0", cc.h0);
  r.number("time.h_min", cc.h_min);
  r.number("time.safety", cc.safety);
  r.number("time.shrink_floor", cc.shrink_floor);
  r.number("time.growth_cap", cc.growth_cap);

  if (auto v = r.text("output.dir")) c.output_dir = *v;
  r.number("output.checkpoint_interval", c.checkpoint_interval);
  if (auto v = r.text("output.restart")) c.restart = *v;

  if (c.mode == StepMode::adaptive) {
    check_tolerance("tol_abs", cc.tol_abs, parsed.warnings);
    check_tolerance("tol_rel", cc.tol_rel, parsed.warnings);
  }
  c.validate();
  if (c.mode == StepMode::adaptive) cc.embedded_order = make_pair(c.integrator).embedded_order;
  return parsed;
}

}  // namespace

void RunConfig::validate() const {
  static const std::set<std::string> known{"ab2", "rk4", "dp5", "bs5", "kcl5"};
  if (known.count(integrator) == 0) {
    fail(ErrorCategory::config, "unknown integrator '" + integrator + "'");
  }
  if (mode == StepMode::adaptive && (integrator == "ab2" || integrator == "rk4")) {
    fail(ErrorCategory::config, integrator + " has no embedded estimator and cannot run adaptively");
  }
  if (mode == StepMode::fixed && !(dt > 0.0)) fail(ErrorCategory::config, "time.dt must be positive");
  if (!(t_end > 0.0)) fail(ErrorCategory::config, "time.t_end must be positive");
  if (forcing && !(problem.params.forcing_cutoff > 0.0)) {
    fail(ErrorCategory::config, "forcing.enabled needs forcing.cutoff > 0");
  }
  if (forcing && problem.with_density()) {
    fail(ErrorCategory::config, "forcing is only defined for the velocity-only system");
  }
  if (checkpoint_interval < 0.0) fail(ErrorCategory::config, "output.checkpoint_interval must be >= 0");
  if (problem.rt.mode < 1) fail(ErrorCategory::config, "rayleigh_taylor.mode must be >= 1");
  try {
    problem.params.validate(problem.with_density());
    if (mode == StepMode::adaptive) controller.validate();
  } catch (const Error& e) {
    fail(ErrorCategory::config, e.what());
  }
}

std::array<int, 3> parse_grid_shape(const std::string& text, int& dims) {
  std::array<int, 3> n{1, 1, 1};
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, 'x')) parts.push_back(trim(item));
  if (parts.size() != 2 && parts.size() != 3) {
    fail(ErrorCategory::config, "grid must look like 32x32 or 32x32x32, got '" + text + "'");
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    n[i] = static_cast<int>(to_integer("problem.grid", parts[i]));
  }
  dims = static_cast<int>(parts.size());
  return n;
}

ParsedConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  const pt::ptree tree = read_tree(text, overrides);
  check_keys(tree, false);
  return build_run_config(tree);
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ParsedConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  return parse_config(slurp(path), overrides);
}

BenchConfig parse_bench_config(std::string_view text, const ConfigOverrides& overrides) {
  pt::ptree tree = read_tree(text, overrides);
  check_keys(tree, true);
  const Reader r(tree);
  BenchConfig out;
  const auto fixed = to_list(r.text("bench.fixed").value_or(""));
  const auto adaptive = to_list(r.text("bench.adaptive").value_or(""));
  const auto dts = to_list(r.text("bench.dts").value_or(""));
  const auto tols = to_list(r.text("bench.tols").value_or(""));
  if (fixed.empty() && adaptive.empty()) fail(ErrorCategory::config, "bench needs fixed or adaptive integrators");
  if (!fixed.empty() && dts.empty()) fail(ErrorCategory::config, "bench.fixed needs bench.dts");
  if (!adaptive.empty() && tols.empty()) fail(ErrorCategory::config, "bench.adaptive needs bench.tols");
  const auto ref = r.text("bench.reference_dt");
  if (!ref) fail(ErrorCategory::config, "missing required key bench.reference_dt");
  out.reference_dt = to_double("bench.reference_dt", *ref);
  if (!(out.reference_dt > 0.0)) fail(ErrorCategory::config, "bench.reference_dt must be positive");
  for (const auto& name : fixed) {
    for (const auto& dt : dts) out.cells.push_back({name, StepMode::fixed, to_double("bench.dts", dt)});
  }
  for (const auto& name : adaptive) {
    for (const auto& tol : tols) {
      out.cells.push_back({name, StepMode::adaptive, to_double("bench.tols", tol)});
    }
  }
  tree.erase("bench");
  ParsedConfig base = build_run_config(tree);
  out.base = std::move(base.config);
  out.warnings = std::move(base.warnings);
  for (const BenchCell& cell : out.cells) {
    RunConfig c = out.base;
    c.integrator = cell.integrator;
    c.mode = cell.mode;
    if (cell.mode == StepMode::fixed) {
      c.dt = cell.setting;
    } else {
      c.controller.tol_abs = c.controller.tol_rel = cell.setting;
      check_tolerance("tol", cell.setting, out.warnings);
    }
    c.validate();
  }
  return out;
}

BenchConfig load_bench_config(const std::string& path, const ConfigOverrides& overrides) {
  return parse_bench_config(slurp(path), overrides);
}

}  // namespace specrk
