#include "specrk/problems.hpp"

#include <cmath>
#include <numbers>

#include "specrk/diagnostics.hpp"
#include "specrk/error.hpp"
#include "specrk/transform.hpp"

namespace specrk {

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::taylor_green: return "taylor_green";
    case ProblemKind::rayleigh_taylor: return "rayleigh_taylor";
    case ProblemKind::hit: return "hit";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(const std::string& name) {
  if (name == "taylor_green") return ProblemKind::taylor_green;
  if (name == "rayleigh_taylor") return ProblemKind::rayleigh_taylor;
  if (name == "hit") return ProblemKind::hit;
  fail(ErrorCategory::config, "unknown problem kind '" + name + "'");
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// 1D DFT of cos and sin sampled at x_i = -pi + 2 pi i / n: the origin shift
// contributes a factor e^{i pi} = -1 to the +1 mode and its conjugate to -1.
Complex dft_cos(int n, int mode) {
  return (mode == 1 || mode == -1) ? Complex(-0.5 * n, 0.0) : Complex(0.0, 0.0);
}

Complex dft_sin(int n, int mode) {
  if (mode == 1) return {0.0, 0.5 * n};
  if (mode == -1) return {0.0, -0.5 * n};
  return {0.0, 0.0};
}

}  // namespace

FlowState taylor_green_init(const GridSpec& grid) {
  for (int axis = 0; axis < grid.dims(); ++axis) {
    if (std::abs(grid.length(axis) - two_pi) > 1e-12) {
      fail(ErrorCategory::invalid_argument, "taylor_green_init: domain must be 2 pi periodic");
    }
  }
  FlowState state(grid, false);
  const int e0 = grid.spectral_extent(0);
  const int n1 = grid.n(1);
  const int n2 = grid.dims() == 3 ? grid.n(2) : 1;
  auto u = state.fields.component(0);
  auto v = state.fields.component(1);
  for (int i2 = 0; i2 < n2; ++i2) {
    const int kz = grid.dims() == 3 ? Wavenumbers::mode_index(grid, 2, i2) : 0;
    const Complex cz = grid.dims() == 3 ? dft_cos(grid.n(2), kz) : Complex(1.0, 0.0);
    for (int i1 = 0; i1 < n1; ++i1) {
      const int ky = Wavenumbers::mode_index(grid, 1, i1);
      for (int i0 = 0; i0 < e0; ++i0) {
        const int kx = i0;
        const auto m = static_cast<std::size_t>(i0 + e0 * (i1 + n1 * i2));
        u[m] = dft_sin(grid.n(0), kx) * dft_cos(n1, ky) * cz;
        v[m] = -dft_cos(grid.n(0), kx) * dft_sin(n1, ky) * cz;
      }
    }
  }
  enforce_hermitian(state.fields);
  return state;
}

FlowState taylor_green_2d_exact(const GridSpec& grid, double reynolds, double t) {
  if (grid.dims() != 2) fail(ErrorCategory::invalid_argument, "taylor_green_2d_exact: 2D grid required");
  FlowState state = taylor_green_init(grid);
  const double decay = std::exp(-2.0 * t / reynolds);
  for (Complex& c : state.fields.data()) c *= decay;
  state.time = t;
  return state;
}

GridSpec rayleigh_taylor_grid(int dims, int n_horizontal, int n_vertical) {
  const double lz = two_pi * n_vertical / n_horizontal;
  if (dims == 2) return GridSpec(2, {n_horizontal, n_vertical, 1}, {two_pi, lz, two_pi});
  return GridSpec(3, {n_horizontal, n_horizontal, n_vertical}, {two_pi, two_pi, lz});
}

FlowState rayleigh_taylor_init(const GridSpec& grid, const RayleighTaylorSpec& spec) {
  const int dims = grid.dims();
  const int vert = dims - 1;
  const double z0 = spec.z0.value_or(0.5 * grid.length(vert));
  const double amp = spec.amplitude.value_or(dims == 2 ? -0.01 : 0.01);
  const double m = spec.mode;

  PhysicalField rho(grid, 1);
  auto r = rho.component(0);
  const int n0 = grid.n(0);
  const int n1 = grid.n(1);
  const int n2 = dims == 3 ? grid.n(2) : 1;
  for (int i2 = 0; i2 < n2; ++i2) {
    for (int i1 = 0; i1 < n1; ++i1) {
      for (int i0 = 0; i0 < n0; ++i0) {
        const double x = i0 * grid.spacing(0);
        double zeta, z;
        if (dims == 2) {
          zeta = amp * std::cos(m * x);
          z = i1 * grid.spacing(1);
        } else {
          const double y = i1 * grid.spacing(1);
          zeta = amp * std::cos(m * x) * std::cos(m * y);
          z = i2 * grid.spacing(2);
        }
        r[static_cast<std::size_t>(i0 + n0 * (i1 + n1 * i2))] =
            0.5 * spec.delta_rho * std::erf(z - z0 + zeta);
      }
    }
  }
  FlowState state(grid, true);
  Transformer tr(grid);
  tr.forward(rho.component(0), state.density());
  return state;
}

FlowState hit_init(const GridSpec& grid, const HitSpec& spec, std::mt19937_64& rng) {
  if (!(spec.target_energy > 0.0)) fail(ErrorCategory::invalid_argument, "hit_init: target energy must be positive");
  if (!(spec.a > 0.0)) fail(ErrorCategory::invalid_argument, "hit_init: spectral width must be positive");
  const Wavenumbers wn(grid);
  FlowState state(grid, false);
  const std::size_t modes = grid.spectral_size();
  const std::size_t d = state.velocity_components();
  auto u = state.velocity();
  const double inv_a2 = 1.0 / (spec.a * spec.a);

  for (std::size_t m = 0; m < modes; ++m) {
    const double k = std::sqrt(wn.k2[m]);
    const double modulus =
        wn.nyquist[m] ? 0.0 : std::pow(k, spec.amplitude_power) * std::exp(-wn.k2[m] * inv_a2);
    for (std::size_t j = 0; j < d; ++j) {
      // 53 random bits mapped to [0, 1): the same on every standard library.
      const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      u[j * modes + m] = std::polar(modulus, two_pi * unit);
    }
  }

  // Conjugate partners inside the kx = 0 and kx = N/2 planes are overwritten
  // by the lower-index entry.
  const int e0 = grid.spectral_extent(0);
  const int n1 = grid.n(1);
  const int n2 = grid.dims() == 3 ? grid.n(2) : 1;
  for (std::size_t j = 0; j < d; ++j) {
    auto c = u.subspan(j * modes, modes);
    for (const int i0 : {0, grid.n(0) / 2}) {
      for (int i2 = 0; i2 < n2; ++i2) {
        for (int i1 = 0; i1 < n1; ++i1) {
          const int self = i1 + n1 * i2;
          const int partner = (n1 - i1) % n1 + n1 * ((n2 - i2) % n2);
          auto& a = c[static_cast<std::size_t>(i0 + e0 * self)];
          if (partner < self) {
            a = std::conj(c[static_cast<std::size_t>(i0 + e0 * partner)]);
          } else if (partner == self) {
            a = Complex(a.real(), 0.0);
          }
        }
      }
    }
    enforce_hermitian(c, grid);
  }

  leray_project(u, wn);
  const double e = kinetic_energy(u, grid);
  if (!(e > 0.0)) fail(ErrorCategory::invalid_argument, "hit_init: spectrum has no energy on this grid");
  const double scale = std::sqrt(spec.target_energy / e);
  for (Complex& z : u) z *= scale;
  return state;
}

FlowState hit_init(const GridSpec& grid, const HitSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return hit_init(grid, spec, rng);
}

FlowState make_initial_state(const ProblemSpec& spec, std::mt19937_64& rng) {
  switch (spec.kind) {
    case ProblemKind::taylor_green: return taylor_green_init(spec.grid);
    case ProblemKind::rayleigh_taylor: return rayleigh_taylor_init(spec.grid, spec.rt);
    case ProblemKind::hit: return hit_init(spec.grid, spec.hit, rng);
  }
  fail(ErrorCategory::invalid_argument, "unknown problem kind");
}

}  // namespace specrk
