#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "specrk/physics.hpp"

namespace specrk {

enum class ProblemKind { taylor_green, rayleigh_taylor, hit };

std::string to_string(ProblemKind kind);
/// Throws Error(config) for unknown names.
ProblemKind parse_problem_kind(const std::string& name);

struct RayleighTaylorSpec {
  double delta_rho = 0.1;
  /// Interface height; defaults to mid-height of the vertical axis.
  std::optional<double> z0;
  /// Interface displacement amplitude; defaults to -0.01 in 2D and 0.01 in 3D.
  std::optional<double> amplitude;
  int mode = 1;
};

struct HitSpec {
  double a = 9.5;
  double target_energy = 0.125;
  /// Exponent p of the modulus |k|^p exp(-|k|^2/a^2).
  double amplitude_power = 1.0;
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::taylor_green;
  GridSpec grid = GridSpec::cube(3, 32);
  PhysParams params;
  RayleighTaylorSpec rt;
  HitSpec hit;
  std::uint64_t seed = 1;

  bool with_density() const { return kind == ProblemKind::rayleigh_taylor; }
};

/// Taylor-Green vortex on [-pi, pi)^dims, built exactly in spectral space.
/// 3D: (sin x cos y cos z, -cos x sin y cos z, 0); 2D: (sin x cos y, -cos x sin y).
FlowState taylor_green_init(const GridSpec& grid);

/// Exact 2D Taylor-Green velocity at time t for viscosity nu = 1/Re.
FlowState taylor_green_2d_exact(const GridSpec& grid, double reynolds, double t);

/// Grid for the Rayleigh-Taylor runs: horizontal axes span 2 pi and the
/// vertical axis 2 pi n_z / n_x, so all spacings are equal.
GridSpec rayleigh_taylor_grid(int dims, int n_horizontal, int n_vertical);

/// Zero velocity and density (delta_rho / 2) erf(z - z0 + zeta) sampled on the
/// grid, with zeta = A cos(m x) in 2D and A cos(m x) cos(m y) in 3D.
FlowState rayleigh_taylor_init(const GridSpec& grid, const RayleighTaylorSpec& spec);

/// Random-phase field with modulus |k|^p exp(-|k|^2/a^2) per component,
/// projected to be solenoidal and rescaled to the target energy. Draws from `rng`.
FlowState hit_init(const GridSpec& grid, const HitSpec& spec, std::mt19937_64& rng);
FlowState hit_init(const GridSpec& grid, const HitSpec& spec, std::uint64_t seed);

/// Dispatches on spec.kind.
FlowState make_initial_state(const ProblemSpec& spec, std::mt19937_64& rng);

}  // namespace specrk
