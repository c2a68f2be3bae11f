#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "specrk/diagnostics.hpp"
#include "specrk/error.hpp"
#include "specrk/physics.hpp"
#include "specrk/problems.hpp"
#include "specrk/runge_kutta.hpp"
#include "specrk/step_control.hpp"
#include "specrk/transform.hpp"

using namespace specrk;

namespace {

struct RealVector {
  GridSpec grid;
  std::vector<std::vector<double>> comps;

  SpectralField spectral() const {
    SpectralField out(grid, comps.size());
    for (std::size_t j = 0; j < comps.size(); ++j) {
      PhysicalField p(grid, 1);
      std::copy(comps[j].begin(), comps[j].end(), p.component(0).begin());
      const SpectralField s = forward_transform(p);
      std::copy(s.data().begin(), s.data().end(), out.component(j).begin());
    }
    return out;
  }
};

RealVector random_vector(const GridSpec& g, std::size_t n, std::mt19937_64& rng) {
  RealVector v{g, {}};
  for (std::size_t j = 0; j < n; ++j) v.comps.push_back(oracle::random_field(g, rng));
  return v;
}

double total_points(const GridSpec& g) { return static_cast<double>(g.physical_size()); }

}  // namespace

TEST(KineticEnergy, Examples) {
  const GridSpec g = GridSpec::cube(3, 16);
  EXPECT_EQ(kinetic_energy(SpectralField(g, 3)), 0.0);
  EXPECT_NEAR(kinetic_energy(taylor_green_init(g).velocity_field()), 0.125, 1e-15);

  // u = A cos(2x) in one component.
  const double A = 1.7;
  PhysicalField p(g, 1);
  for (int k = 0; k < 16; ++k)
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i)
        p.component(0)[std::size_t(i + 16 * (j + 16 * k))] = A * std::cos(2 * 2 * std::numbers::pi * i / 16);
  EXPECT_NEAR(kinetic_energy(forward_transform(p)), A * A / 4, 1e-14);
}

class FullOracle : public ::testing::TestWithParam<GridSpec> {};

TEST_P(FullOracle, EnergyDissipationAndErrorNormMatchFullSpectrum) {
  const GridSpec g = GetParam();
  const std::size_t d = std::size_t(g.dims());
  std::mt19937_64 rng(77);
  const RealVector u = random_vector(g, d, rng);
  const RealVector f = random_vector(g, d, rng);
  const double n2 = total_points(g) * total_points(g);

  long double e_ref = 0.0L, eps_ref = 0.0L;
  for (std::size_t j = 0; j < d; ++j) {
    const auto U = oracle::full_dft(g, u.comps[j]);
    const auto F = oracle::full_dft(g, f.comps[j]);
    for (std::size_t m = 0; m < U.c.size(); ++m) {
      e_ref += std::norm(std::complex<long double>(U.c[m]));
      eps_ref += (std::complex<long double>(U.c[m]) * std::conj(std::complex<long double>(F.c[m]))).real();
    }
  }
  e_ref /= 2.0L * n2;
  eps_ref /= -n2;
  const SpectralField us = u.spectral(), fs = f.spectral();
  EXPECT_NEAR(kinetic_energy(us), double(e_ref), 1e-12 * double(e_ref));
  EXPECT_NEAR(dissipation_rate(us, fs), double(eps_ref), 1e-12 * std::abs(double(e_ref)));

  // Error norm: stored entries of the full spectra, RMS over the half layout.
  ControllerConfig cfg;
  cfg.tol_abs = 1e-3;
  cfg.tol_rel = 1e-2;
  const std::size_t modes = g.spectral_size();
  std::vector<double> sc(d * modes);
  scale_vector(us.data(), fs.data(), cfg, sc);
  double err_ref = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const auto U = oracle::full_dft(g, u.comps[j]);
    const auto F = oracle::full_dft(g, f.comps[j]);
    double sum = 0.0;
    oracle::for_each_stored(g, [&](int m0, int m1, int m2, std::size_t) {
      const Complex a = U.at(m0, m1, m2), b = F.at(m0, m1, m2);
      const double s = cfg.tol_abs + std::max(std::abs(a), std::abs(b)) * cfg.tol_rel;
      sum += std::norm((a - b) / s);
    });
    err_ref = std::max(err_ref, std::sqrt(sum / double(modes)));
  }
  EXPECT_NEAR(error_norm(us.data(), fs.data(), sc, modes), err_ref, 1e-12 * err_ref);
}

INSTANTIATE_TEST_SUITE_P(Grids, FullOracle,
                         ::testing::Values(GridSpec::cube(2, 16), GridSpec(2, {8, 12, 1}),
                                           GridSpec::cube(3, 8), GridSpec(3, {12, 8, 16})));

TEST(Dissipation, PureDiffusionSubstitution) {
  const GridSpec g = GridSpec::cube(3, 8);
  std::mt19937_64 rng(4);
  const SpectralField u = random_vector(g, 3, rng).spectral();
  const Wavenumbers wn(g);
  const double re = 40.0;
  SpectralField f(g, 3);
  double expected = 0.0;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t m = 0; m < f.modes(); ++m) {
      f.component(j)[m] = -wn.k2[m] / re * u.component(j)[m];
      expected += wn.weight[m] * wn.k2[m] * std::norm(u.component(j)[m]);
    }
  expected /= re * total_points(g) * total_points(g);
  EXPECT_GT(expected, 0.0);
  EXPECT_NEAR(dissipation_rate(u, f), expected, 1e-13 * expected);
  EXPECT_EQ(dissipation_rate(SpectralField(g, 3), f), 0.0);
}

TEST(Dissipation, AgreesWithEnergyDecayAndDiffusionOnlyValue) {
  const GridSpec g = GridSpec::cube(3, 16);
  PhysParams p;
  p.reynolds = 100.0;
  FlowState s = hit_init(g, HitSpec{3.0, 0.125, 1.0}, 5);
  FlowRhs rhs(g, p, false);
  const OdeRhs f = [&](double, std::span<const Complex> y, std::span<Complex> dy) { rhs(y, dy); };
  const std::size_t size = s.fields.size();
  std::vector<Complex> f0(size), f1(size);
  rhs(s.fields.data(), f0);

  // Convective part is energy neutral, so eps equals the viscous value.
  const Wavenumbers& wn = rhs.wavenumbers();
  double visc = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t m = i % wn.k2.size();
    visc += wn.weight[m] * wn.k2[m] * std::norm(s.fields.data()[i]);
  }
  visc *= energy_normalization(g) * 2.0 / p.reynolds;
  const double eps0 = dissipation_rate(s.fields.data(), f0, g);
  EXPECT_NEAR(eps0, visc, 1e-8 * visc);

  const double h = 1e-4;
  const double e0 = kinetic_energy(s.fields.data(), g);
  const auto step = rk_step(f, s.fields.data(), 0.0, h, make_rk4());
  rhs(step.y_new, f1);
  const double e1 = kinetic_energy(step.y_new, g);
  const double eps1 = dissipation_rate(step.y_new, f1, g);
  const double fd = -(e1 - e0) / h;
  EXPECT_NEAR(fd, 0.5 * (eps0 + eps1), 1e-6 * eps0);
}

TEST(Spectrum, SingleModeAndTaylorGreenShells) {
  const GridSpec g = GridSpec::cube(3, 16);
  SpectralField u(g, 3);
  u.component(1)[5] = 100.0;  // k = (5, 0, 0)
  const SpectrumRecord s = energy_spectrum(u);
  for (std::size_t i = 0; i < s.energy.size(); ++i) {
    EXPECT_EQ(s.shell[i], double(i));
    if (i != 5) EXPECT_EQ(s.energy[i], 0.0);
  }
  EXPECT_NEAR(s.energy[5], kinetic_energy(u), 1e-15);

  const SpectrumRecord tg = energy_spectrum(taylor_green_init(g).velocity_field());
  double total = 0.0;
  for (std::size_t i = 0; i < tg.energy.size(); ++i) {
    total += tg.energy[i];
    if (i != 2) EXPECT_LT(tg.energy[i], 1e-30);
  }
  EXPECT_NEAR(tg.energy[2], 0.125, 1e-15);
  EXPECT_NEAR(total, 0.125, 1e-15);
}

TEST(Spectrum, MatchesBruteForceBinningOfFullSpectrum) {
  const GridSpec g = GridSpec::cube(3, 16);
  std::mt19937_64 rng(12);
  const RealVector u = random_vector(g, 3, rng);
  const SpectrumRecord s = energy_spectrum(u.spectral());
  std::map<int, long double> bins;
  for (std::size_t j = 0; j < 3; ++j) {
    const auto U = oracle::full_dft(g, u.comps[j]);
    for (int i2 = 0; i2 < 16; ++i2)
      for (int i1 = 0; i1 < 16; ++i1)
        for (int i0 = 0; i0 < 16; ++i0) {
          const int m0 = oracle::signed_mode(i0, 16), m1 = oracle::signed_mode(i1, 16),
                    m2 = oracle::signed_mode(i2, 16);
          const double k = std::sqrt(double(m0 * m0 + m1 * m1 + m2 * m2));
          bins[int(std::floor(k + 0.5))] += std::norm(std::complex<long double>(U.at(m0, m1, m2)));
        }
  }
  const double norm = 1.0 / (2.0 * total_points(g) * total_points(g));
  double total = 0.0;
  for (const auto& [shell, e] : bins) {
    ASSERT_LT(std::size_t(shell), s.energy.size());
    EXPECT_NEAR(s.energy[std::size_t(shell)], double(e) * norm, 1e-12 * double(e) * norm) << shell;
    total += s.energy[std::size_t(shell)];
  }
  EXPECT_NEAR(total, kinetic_energy(u.spectral()), 1e-10 * total);
}

TEST(FieldErrors, Examples) {
  const GridSpec g = GridSpec::cube(2, 16);
  std::mt19937_64 rng(8);
  const RealVector ref = random_vector(g, 2, rng);
  const SpectralField r = ref.spectral();
  const FieldErrorNorms same = field_error_norms(r, r);
  EXPECT_EQ(same.l2_rel, 0.0);
  EXPECT_EQ(same.max_rel, 0.0);

  SpectralField scaled = r;
  for (Complex& z : scaled.data()) z *= 1.01;
  const FieldErrorNorms e = field_error_norms(scaled, r);
  EXPECT_NEAR(e.l2_rel, 0.01, 1e-13);
  EXPECT_NEAR(e.max_rel, 0.01, 1e-13);

  RealVector pert = ref;
  std::normal_distribution<double> n01;
  for (auto& c : pert.comps)
    for (double& x : c) x += 1e-3 * n01(rng);
  long double d2 = 0, r2 = 0, dmax = 0, rmax = 0;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < g.physical_size(); ++i) {
      const long double d = pert.comps[j][i] - ref.comps[j][i];
      d2 += d * d;
      r2 += (long double)ref.comps[j][i] * ref.comps[j][i];
      dmax = std::max(dmax, std::abs(d));
      rmax = std::max(rmax, std::abs((long double)ref.comps[j][i]));
    }
  const FieldErrorNorms got = field_error_norms(pert.spectral(), r);
  EXPECT_NEAR(got.l2_rel, double(std::sqrt(d2 / r2)), 1e-10 * double(std::sqrt(d2 / r2)));
  EXPECT_NEAR(got.max_rel, double(dmax / rmax), 1e-10 * double(dmax / rmax));

  EXPECT_THROW(field_error_norms(r, SpectralField(GridSpec::cube(2, 8), 2)), Error);
}

TEST(CompareSeries, QuadraticReproductionAndOffset) {
  TimeSeries ref;
  for (int i = 0; i <= 10; ++i) {
    const double t = 0.1 * i + 0.01 * i * i;
    ref.t.push_back(t);
    ref.value.push_back(3.0 - 2.0 * t + 0.5 * t * t);
  }
  TimeSeries s;
  for (double t = 0.0; t <= ref.t.back(); t += 0.037) {
    s.t.push_back(t);
    s.value.push_back(3.0 - 2.0 * t + 0.5 * t * t);
  }
  EXPECT_LT(compare_series(s, ref), 1e-14);

  TimeSeries shifted = ref;
  for (double& v : shifted.value) v += 0.25;
  EXPECT_NEAR(compare_series(shifted, ref), 0.25, 1e-15);
}

TEST(CompareSeries, CubicErrorShrinksAsSpacingCubed) {
  const auto cubic = [](double t) { return t * t * t - t; };
  TimeSeries s;
  for (int i = 0; i <= 97; ++i) {
    s.t.push_back(i / 97.0);
    s.value.push_back(cubic(i / 97.0));
  }
  std::vector<double> errs;
  for (int n : {10, 20, 40}) {
    TimeSeries ref;
    for (int i = 0; i <= n; ++i) {
      ref.t.push_back(double(i) / n);
      ref.value.push_back(cubic(double(i) / n));
    }
    errs.push_back(compare_series(s, ref));
  }
  for (std::size_t i = 1; i < errs.size(); ++i) EXPECT_NEAR(errs[i - 1] / errs[i], 8.0, 1.0);
}

TEST(CompareSeries, ExtrapolationIsOutOfRange) {
  TimeSeries ref{{0.0, 1.0, 2.0}, {0.0, 1.0, 4.0}};
  try {
    compare_series(TimeSeries{{2.5}, {0.0}}, ref);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::out_of_range);
  }
  EXPECT_EQ(compare_series(ref, ref), 0.0);
}
