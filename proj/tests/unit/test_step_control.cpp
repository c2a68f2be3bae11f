#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "specrk/butcher.hpp"
#include "specrk/error.hpp"
#include "specrk/step_control.hpp"

using namespace specrk;

namespace {

OdeRhs linear(double lambda) {
  return [lambda](double, std::span<const Complex> y, std::span<Complex> dy) {
    for (std::size_t i = 0; i < y.size(); ++i) dy[i] = lambda * y[i];
  };
}

}  // namespace

TEST(ScaleVector, Examples) {
  ControllerConfig c;
  c.tol_abs = c.tol_rel = 1e-4;
  std::vector<Complex> zero(3);
  std::vector<double> sc(3);
  scale_vector(zero, zero, c, sc);
  for (double x : sc) EXPECT_EQ(x, 1e-4);

  const std::vector<Complex> prev{Complex(0.6, 0.8)}, next{Complex(0.0, -2.0)};
  std::vector<double> one(1);
  scale_vector(prev, next, c, one);
  EXPECT_NEAR(one[0], 3e-4, 1e-19);
}

TEST(ScaleVector, BoundedBelowAndMonotone) {
  ControllerConfig c;
  c.tol_abs = 1e-7;
  c.tol_rel = 1e-5;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  std::vector<Complex> a(200), b(200), b2(200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = Complex(n01(rng), n01(rng));
    b[i] = Complex(n01(rng), n01(rng));
    b2[i] = 1.5 * b[i];
  }
  std::vector<double> s1(200), s2(200);
  scale_vector(a, b, c, s1);
  scale_vector(a, b2, c, s2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_GE(s1[i], c.tol_abs);
    EXPECT_GE(s2[i], s1[i]);
  }
}

TEST(ErrorNorm, Examples) {
  const std::size_t modes = 16 * 16 * 9;
  std::vector<Complex> main(modes), emb(modes);
  std::vector<double> sc(modes, 2.0);
  EXPECT_EQ(error_norm(main, emb, sc, modes), 0.0);

  for (std::size_t m = 0; m < modes; ++m) main[m] = Complex(0.6, 0.8);  // |delta| / sc = 0.5
  EXPECT_DOUBLE_EQ(error_norm(main, emb, sc, modes), 0.5);

  std::fill(main.begin(), main.end(), Complex(0.0));
  main[17] = Complex(0.0, 2.0);
  EXPECT_DOUBLE_EQ(error_norm(main, emb, sc, modes), 1.0 / std::sqrt(double(modes)));
}

TEST(ErrorNorm, MaxOverComponentsHomogeneousAndPermutationInvariant) {
  const std::size_t modes = 50;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<Complex> d(3 * modes);
  std::vector<double> sc(3 * modes);
  for (auto& z : d) z = Complex(u(rng), -u(rng));
  for (auto& s : sc) s = u(rng);
  double expected = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    double sum = 0.0;
    for (std::size_t m = 0; m < modes; ++m) sum += std::norm(d[j * modes + m]) / (sc[j * modes + m] * sc[j * modes + m]);
    expected = std::max(expected, std::sqrt(sum / modes));
  }
  const double e = error_norm(d, sc, modes);
  EXPECT_NEAR(e, expected, 1e-14);

  std::vector<Complex> scaled(d);
  for (auto& z : scaled) z *= -3.0;
  EXPECT_NEAR(error_norm(scaled, sc, modes), 3.0 * e, 1e-13);

  std::vector<Complex> perm(d);
  std::vector<double> sc_perm(sc);
  std::rotate(perm.begin(), perm.begin() + modes, perm.end());
  std::rotate(sc_perm.begin(), sc_perm.begin() + modes, sc_perm.end());
  EXPECT_EQ(error_norm(perm, sc_perm, modes), e);
}

TEST(ErrorNorm, ZeroScaleIsInvalid) {
  std::vector<Complex> d(4);
  std::vector<double> sc{1.0, 0.0, 1.0, 1.0};
  try {
    error_norm(d, sc, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::invalid_scale);
  }
}

TEST(ProposeStep, FormulaExamples) {
  const ControllerConfig c;
  ControllerState s{1.0, false, 0, 0};

  auto p = propose_step(1.0, s, c);
  EXPECT_TRUE(p.accepted);
  EXPECT_DOUBLE_EQ(p.h_new, 0.8);

  s = {1.0, false, 0, 0};
  p = propose_step(1e-10, s, c);
  EXPECT_TRUE(p.accepted);
  EXPECT_EQ(p.h_new, 2.0);

  s = {1.0, false, 0, 0};
  p = propose_step(32.0, s, c);
  EXPECT_FALSE(p.accepted);
  EXPECT_NEAR(p.h_new, 0.4, 1e-15);
  EXPECT_TRUE(s.prev_rejected);
  EXPECT_EQ(s.rejection_count, 1);

  // Right after that rejection.
  p = propose_step(0.5, s, c);
  EXPECT_TRUE(p.accepted);
  EXPECT_NEAR(p.h_new, 0.8 * std::pow(2.0, 0.2), 1e-15);
  EXPECT_NEAR(p.h_new, 0.9189586839976, 1e-12);

  s = {1.0, true, 0, 0};
  EXPECT_EQ(propose_step(1e-10, s, c).h_new, 1.0);
}

TEST(ProposeStep, ZeroAndNonFiniteErrors) {
  const ControllerConfig c;
  ControllerState s{0.5, false, 0, 0};
  EXPECT_EQ(propose_step(0.0, s, c).h_new, 1.0);
  s = {0.5, false, 0, 0};
  const auto p = propose_step(std::numeric_limits<double>::infinity(), s, c);
  EXPECT_FALSE(p.accepted);
  EXPECT_EQ(p.h_new, 0.005);
  s = {0.5, false, 0, 0};
  EXPECT_EQ(propose_step(std::nan(""), s, c).h_new, 0.005);
}

TEST(ProposeStep, FactorAlwaysWithinBounds) {
  const ControllerConfig c;
  for (double err = 1e-12; err < 1e12; err *= 3.7) {
    for (bool rej : {false, true}) {
      ControllerState s{1.0, rej, 0, 0};
      const double h = propose_step(err, s, c).h_new;
      EXPECT_GE(h, c.shrink_floor);
      EXPECT_LE(h, rej ? 1.0 : c.growth_cap);
    }
  }
}

TEST(ProposeStep, UnderflowAborts) {
  ControllerConfig c;
  c.h0 = 1.0;
  c.h_min = 0.05;
  ControllerState s{1.0, false, 0, 0};
  try {
    propose_step(1e20, s, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::step_size_underflow);
  }
}

TEST(Adaptive, LooseToleranceGrowsToCapWithoutRejections) {
  ControllerConfig c;
  c.tol_abs = c.tol_rel = 1e-2;
  c.h0 = 1e-4;
  AdaptiveIntegrator ai(make_bs5(), c, 1, 1);
  std::vector<Complex> y{1.0};
  double t = 0.0;
  double h_prev = c.h0;
  for (int n = 0; n < 8; ++n) {
    const AdvanceResult r = ai.advance(linear(-1.0), t, y);
    EXPECT_EQ(r.rejections, 0);
    EXPECT_EQ(r.h_used, h_prev);
    EXPECT_EQ(ai.state().h, 2.0 * h_prev);
    h_prev = ai.state().h;
  }
}

TEST(Adaptive, HugeInitialStepIsRejectedUntilAcceptable) {
  ControllerConfig c;
  c.tol_abs = c.tol_rel = 1e-8;
  c.h0 = 1e4;
  AdaptiveIntegrator ai(make_dp5(), c, 1, 1);
  std::vector<Complex> y{1.0};
  double t = 0.0;
  const AdvanceResult r = ai.advance(linear(-5.0), t, y);
  const int last_rejections = r.rejections;
  EXPECT_GT(last_rejections, 0);
  EXPECT_GE(r.h_used, c.h0 * std::pow(c.shrink_floor, last_rejections) * (1 - 1e-12));
  EXPECT_LT(r.h_used, c.h0 * 1e-3);
  EXPECT_EQ(ai.state().rejection_count, last_rejections);
  EXPECT_NEAR(std::abs(y[0] - std::exp(-5.0 * t)), 0.0, 1e-6);
}

TEST(Adaptive, NonFiniteStageIsARejection) {
  ControllerConfig c;
  c.h0 = 1.0;
  AdaptiveIntegrator ai(make_bs5(), c, 1, 1);
  std::vector<Complex> y{1.0};
  double t = 0.0;
  // y' = y^2 with h = 1 drives the stages past 3, where the rhs reports infinity.
  const OdeRhs blow = [](double, std::span<const Complex> y, std::span<Complex> dy) {
    dy[0] = std::abs(y[0]) > 3.0 ? Complex(std::numeric_limits<double>::infinity()) : y[0] * y[0];
  };
  const AdvanceResult r = ai.advance(blow, t, y);
  EXPECT_GE(r.rejections, 1);
  EXPECT_TRUE(std::isfinite(y[0].real()));
}

TEST(Adaptive, ClampLandsExactlyOnLimitAndKeepsPlannedStep) {
  ControllerConfig c;
  c.tol_abs = c.tol_rel = 1e-3;
  c.h0 = 0.3;
  AdaptiveIntegrator ai(make_bs5(), c, 1, 1);
  std::vector<Complex> y{1.0};
  double t = 0.0;
  AdvanceResult r;
  do {
    r = ai.advance(linear(-0.1), t, y, 1.0);
  } while (!r.clamped);
  EXPECT_EQ(t, 1.0);
  EXPECT_GT(ai.state().h, r.h_used);
}

TEST(Adaptive, TighterToleranceGivesSmallerSteps) {
  std::vector<double> mean_h;
  for (double tol : {1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
    ControllerConfig c;
    c.tol_abs = c.tol_rel = tol;
    c.h0 = 1e-3;
    AdaptiveIntegrator ai(make_bs5(), c, 1, 1);
    std::vector<Complex> y{1.0};
    double t = 0.0;
    int n = 0;
    while (t < 2.0) {
      ai.advance(linear(-1.0), t, y, 2.0);
      ++n;
    }
    mean_h.push_back(2.0 / n);
  }
  for (std::size_t i = 1; i < mean_h.size(); ++i) EXPECT_LT(mean_h[i], mean_h[i - 1] * 1.05);
}

TEST(Adaptive, RequiresEmbeddedPair) {
  EXPECT_THROW(AdaptiveIntegrator(make_rk4(), ControllerConfig{}, 1, 1), Error);
}

TEST(ControllerConfig, Validation) {
  ControllerConfig c;
  EXPECT_NO_THROW(c.validate());
  c.safety = 1.2;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.growth_cap = 0.9;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.tol_abs = 0.0;
  EXPECT_THROW(c.validate(), Error);
  EXPECT_EQ(ControllerConfig{}.effective_h_min(), 1e-15);
}
