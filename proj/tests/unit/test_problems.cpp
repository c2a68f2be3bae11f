#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "specrk/diagnostics.hpp"
#include "specrk/error.hpp"
#include "specrk/problems.hpp"
#include "specrk/transform.hpp"

using namespace specrk;

namespace {

constexpr double pi = std::numbers::pi;

double max_divergence(const FlowState& s) {
  const Wavenumbers wn(s.grid());
  const std::size_t modes = s.grid().spectral_size();
  double worst = 0.0;
  for (std::size_t m = 0; m < modes; ++m) {
    Complex div = 0.0;
    for (std::size_t j = 0; j < s.velocity_components(); ++j) div += wn.k[j][m] * s.velocity()[j * modes + m];
    worst = std::max(worst, std::abs(div));
  }
  return worst;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

void expect_hermitian_planes(const FlowState& s) {
  const GridSpec& g = s.grid();
  for (std::size_t j = 0; j < s.fields.components(); ++j) {
    for (const int m0 : {0, g.n(0) / 2}) {
      for (int m2 = g.dims() == 3 ? -g.n(2) / 2 + 1 : 0; m2 <= (g.dims() == 3 ? g.n(2) / 2 : 0); ++m2)
        for (int m1 = -g.n(1) / 2 + 1; m1 <= g.n(1) / 2; ++m1) {
          const Complex a = oracle::stored(s.fields, j, m0, m1, m2);
          const Complex b = oracle::stored(s.fields, j, m0, -m1, -m2);
          EXPECT_EQ(a, std::conj(b));
        }
    }
  }
}

}  // namespace

TEST(TaylorGreen, MatchesClosedFormPointwise) {
  for (const GridSpec& g : {GridSpec::cube(3, 16), GridSpec::cube(2, 32)}) {
    const PhysicalField u = inverse_transform(taylor_green_init(g).velocity_field());
    const int n = g.n(0);
    const int nz = g.dims() == 3 ? n : 1;
    double worst = 0.0;
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const double x = -pi + 2 * pi * i / n, y = -pi + 2 * pi * j / n, z = -pi + 2 * pi * k / n;
          const double cz = g.dims() == 3 ? std::cos(z) : 1.0;
          const std::size_t p = std::size_t(i + n * (j + n * k));
          worst = std::max(worst, std::abs(u.component(0)[p] - std::sin(x) * std::cos(y) * cz));
          worst = std::max(worst, std::abs(u.component(1)[p] + std::cos(x) * std::sin(y) * cz));
          if (g.dims() == 3) worst = std::max(worst, std::abs(u.component(2)[p]));
        }
    EXPECT_LT(worst, 1e-13);
  }
}

TEST(TaylorGreen, DivergenceEnergyAndSupport) {
  const GridSpec g = GridSpec::cube(3, 8);
  const FlowState s = taylor_green_init(g);
  EXPECT_EQ(max_divergence(s), 0.0);
  EXPECT_NEAR(kinetic_energy(s.velocity(), g), 0.125, 1e-15);
  expect_hermitian_planes(s);

  // Direct DFT of the closed form on the shifted grid.
  std::vector<double> u(g.physical_size());
  for (int k = 0; k < 8; ++k)
    for (int j = 0; j < 8; ++j)
      for (int i = 0; i < 8; ++i)
        u[std::size_t(i + 8 * (j + 8 * k))] =
            std::sin(-pi + 2 * pi * i / 8) * std::cos(-pi + 2 * pi * j / 8) * std::cos(-pi + 2 * pi * k / 8);
  const auto full = oracle::full_dft(g, u);
  oracle::for_each_stored(g, [&](int m0, int m1, int m2, std::size_t idx) {
    const Complex got = s.fields.component(0)[idx];
    EXPECT_NEAR(std::abs(got - full.at(m0, m1, m2)), 0.0, 1e-12);
    if (std::abs(m0) != 1 || std::abs(m1) != 1 || std::abs(m2) != 1) EXPECT_EQ(got, Complex(0.0));
  });
}

TEST(TaylorGreen, CoarseIsTruncationOfFine) {
  const FlowState coarse = taylor_green_init(GridSpec::cube(3, 8));
  const FlowState fine = taylor_green_init(GridSpec::cube(3, 16));
  for (std::size_t j = 0; j < 3; ++j)
    oracle::for_each_stored(coarse.grid(), [&](int m0, int m1, int m2, std::size_t idx) {
      if (oracle::is_nyquist(m0, 8) || oracle::is_nyquist(m1, 8) || oracle::is_nyquist(m2, 8)) return;
      EXPECT_EQ(8.0 * coarse.fields.component(j)[idx], oracle::stored(fine.fields, j, m0, m1, m2));
    });
}

TEST(TaylorGreen, ExactDecay2D) {
  const GridSpec g = GridSpec::cube(2, 16);
  const FlowState s = taylor_green_2d_exact(g, 100.0, 1.5);
  const FlowState s0 = taylor_green_init(g);
  EXPECT_EQ(s.time, 1.5);
  EXPECT_NEAR(kinetic_energy(s.velocity(), g), kinetic_energy(s0.velocity(), g) * std::exp(-4 * 1.5 / 100.0),
              1e-15);
  EXPECT_THROW(taylor_green_2d_exact(GridSpec::cube(3, 8), 1.0, 0.0), Error);
}

TEST(RayleighTaylor, GridGeometry) {
  const GridSpec g = rayleigh_taylor_grid(2, 128, 512);
  EXPECT_EQ(g.n(0), 128);
  EXPECT_EQ(g.n(1), 512);
  EXPECT_NEAR(g.length(1), 8 * pi, 1e-12);
  EXPECT_NEAR(g.spacing(0), g.spacing(1), 1e-15);
  const GridSpec g3 = rayleigh_taylor_grid(3, 16, 32);
  EXPECT_NEAR(g3.length(2), 4 * pi, 1e-12);
}

TEST(RayleighTaylor, ProfileLimitsAndZeroVelocity) {
  const GridSpec g = rayleigh_taylor_grid(2, 16, 64);
  const FlowState s = rayleigh_taylor_init(g, RayleighTaylorSpec{});
  for (const Complex& z : s.velocity()) EXPECT_EQ(z, Complex(0.0));
  const PhysicalField rho = inverse_transform(s.density_field());
  for (int i = 0; i < 16; ++i) {
    EXPECT_NEAR(rho.component(0)[std::size_t(i)], -0.05, 1e-12);                // bottom
    EXPECT_NEAR(rho.component(0)[std::size_t(i + 16 * 63)], 0.05, 1e-12);       // top
  }
  expect_hermitian_planes(s);
}

TEST(RayleighTaylor, FlatInterfaceHasNoHorizontalContent) {
  const GridSpec g = rayleigh_taylor_grid(3, 8, 16);
  RayleighTaylorSpec spec;
  spec.amplitude = 0.0;
  const FlowState s = rayleigh_taylor_init(g, spec);
  oracle::for_each_stored(g, [&](int m0, int m1, int, std::size_t idx) {
    if (m0 != 0 || m1 != 0) EXPECT_LT(std::abs(s.density()[idx]), 1e-14);
  });
}

TEST(RayleighTaylor, InterfaceDisplacementAtOrigin) {
  const GridSpec g = rayleigh_taylor_grid(2, 256, 256);
  const FlowState s = rayleigh_taylor_init(g, RayleighTaylorSpec{});
  const PhysicalField rho = inverse_transform(s.density_field());
  const double z0 = 0.5 * g.length(1);
  const double dz = g.spacing(1);
  const auto root_at_column = [&](int i) {
    for (int j = 0; j + 1 < 256; ++j) {
      const double a = rho.component(0)[std::size_t(i + 256 * j)];
      const double b = rho.component(0)[std::size_t(i + 256 * (j + 1))];
      if (a <= 0.0 && b > 0.0) return (j + a / (a - b)) * dz;
    }
    return -1.0;
  };
  EXPECT_NEAR(root_at_column(0) - z0, 0.01, 1e-4);
  EXPECT_NEAR(root_at_column(128) - z0, -0.01, 1e-4);
}

TEST(Hit, SolenoidalAtTargetEnergyAndDeterministic) {
  const GridSpec g = GridSpec::cube(3, 16);
  HitSpec spec;
  spec.target_energy = 0.3;
  const FlowState a = hit_init(g, spec, 42);
  const FlowState b = hit_init(g, spec, 42);
  const FlowState c = hit_init(g, spec, 43);
  EXPECT_LT(max_divergence(a), 1e-13 * norm2(a.velocity()));
  EXPECT_NEAR(kinetic_energy(a.velocity(), g), 0.3, 1e-12 * 0.3);
  EXPECT_NEAR(kinetic_energy(c.velocity(), g), 0.3, 1e-12 * 0.3);
  EXPECT_TRUE(a.fields == b.fields);
  EXPECT_FALSE(a.fields == c.fields);
  expect_hermitian_planes(a);
  const Wavenumbers wn(g);
  for (std::size_t m = 0; m < g.spectral_size(); ++m)
    if (wn.nyquist[m])
      for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(a.fields.component(j)[m], Complex(0.0));

  spec.target_energy = 0.0;
  EXPECT_THROW(hit_init(g, spec, 1), Error);
}

TEST(Hit, SeedAveragedSpectrumFollowsAmplitudeLaw) {
  // Each stored mode carries 3 components of modulus |k|^p e^{-k^2/a^2};
  // projection keeps 2 of the 3 in expectation.
  const GridSpec g = GridSpec::cube(3, 32);
  HitSpec spec;
  spec.a = 4.0;
  const int n = 32, seeds = 10;
  const std::size_t shells = 17;
  std::vector<double> oracle_shell(shells, 0.0);
  for (int i2 = 0; i2 < n; ++i2)
    for (int i1 = 0; i1 < n; ++i1)
      for (int i0 = 0; i0 < n; ++i0) {
        const int m0 = oracle::signed_mode(i0, n), m1 = oracle::signed_mode(i1, n), m2 = oracle::signed_mode(i2, n);
        if (oracle::is_nyquist(m0, n) || oracle::is_nyquist(m1, n) || oracle::is_nyquist(m2, n)) continue;
        const double k2 = m0 * m0 + m1 * m1 + m2 * m2;
        const auto shell = std::size_t(std::floor(std::sqrt(k2) + 0.5));
        if (shell < shells) oracle_shell[shell] += 2.0 * k2 * std::exp(-2.0 * k2 / (spec.a * spec.a));
      }
  std::vector<std::vector<double>> spectra;
  std::vector<double> mean(shells, 0.0);
  for (int s = 0; s < seeds; ++s) {
    const SpectrumRecord r = energy_spectrum(hit_init(g, spec, std::uint64_t(100 + s)).velocity_field());
    spectra.push_back(r.energy);
    for (std::size_t i = 0; i < shells; ++i) mean[i] += r.energy[i] / seeds;
  }
  double total_oracle = 0.0, total_mean = 0.0;
  for (std::size_t i = 1; i < 12; ++i) {
    total_oracle += oracle_shell[i];
    total_mean += mean[i];
  }
  for (std::size_t i = 3; i < 10; ++i) {
    EXPECT_NEAR(mean[i] / total_mean, oracle_shell[i] / total_oracle, 0.1 * oracle_shell[i] / total_oracle)
        << "shell " << i;
    double var = 0.0;
    for (const auto& e : spectra) var += (e[i] - mean[i]) * (e[i] - mean[i]) / (seeds - 1);
    for (const auto& e : spectra) EXPECT_LE(std::abs(e[i] - mean[i]), 3.0 * std::sqrt(var) + 1e-300);
  }
}

TEST(Problems, KindNamesAndDispatch) {
  EXPECT_EQ(parse_problem_kind("hit"), ProblemKind::hit);
  EXPECT_EQ(to_string(ProblemKind::rayleigh_taylor), "rayleigh_taylor");
  try {
    parse_problem_kind("channel");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::config);
  }
  ProblemSpec spec;
  spec.kind = ProblemKind::rayleigh_taylor;
  spec.grid = rayleigh_taylor_grid(2, 8, 16);
  std::mt19937_64 rng(1);
  EXPECT_TRUE(make_initial_state(spec, rng).has_density);
}
