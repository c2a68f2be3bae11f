#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "specrk/runge_kutta.hpp"

namespace specrk {

struct ControllerConfig {
  double tol_abs = 1e-6;
  double tol_rel = 1e-6;
  double safety = 0.8;
  double shrink_floor = 0.01;
  double growth_cap = 2.0;
  int embedded_order = 4;
  double h0 = 1e-3;
  /// 0 selects 1e-12 * h0.
  double h_min = 0.0;

  double effective_h_min() const { return h_min > 0.0 ? h_min : 1e-12 * h0; }
  /// Throws Error(invalid_argument) when the invariants on the factors or tolerances fail.
  void validate() const;
};

struct ControllerState {
  double h = 0.0;
  bool prev_rejected = false;
  long long rejection_count = 0;
  long long acceptance_count = 0;
};

/// sc = tol_abs + max(|u_prev|, |u_new|) tol_rel, entrywise.
void scale_vector(std::span<const Complex> u_prev, std::span<const Complex> u_new,
                  const ControllerConfig& config, std::span<double> sc);

/// max over components of sqrt(mean over modes |delta / sc|^2). `delta` and `sc`
/// hold `components` blocks of `modes` entries each.
double error_norm(std::span<const Complex> delta, std::span<const double> sc, std::size_t modes);
double error_norm(std::span<const Complex> u_main, std::span<const Complex> u_embedded,
                  std::span<const double> sc, std::size_t modes);

struct Proposal {
  double h_new = 0.0;
  bool accepted = false;
};

/// Accept iff err <= 1; h_new = h min(cap, max(floor, safety err^(-1/(q+1)))),
/// with cap 1 right after a rejection. Updates the tallies and the rejection
/// flag but not state.h. Throws Error(step_size_underflow) below h_min.
Proposal propose_step(double err, ControllerState& state, const ControllerConfig& config);

struct AdvanceResult {
  double h_used = 0.0;
  int rhs_evals = 0;
  int rejections = 0;
  bool clamped = false;
};

/// Embedded-pair time stepping with the controller above.
class AdaptiveIntegrator {
 public:
  AdaptiveIntegrator(ButcherPair pair, ControllerConfig config, std::size_t modes,
                     std::size_t components);

  /// Takes one accepted step from (t, y), retrying rejected attempts with the
  /// proposed smaller h. A step that would pass t_limit is shortened to land on it.
  AdvanceResult advance(const OdeRhs& f, double& t, std::span<Complex> y,
                        double t_limit = std::numeric_limits<double>::infinity());

  RungeKuttaStepper& stepper() { return stepper_; }
  const RungeKuttaStepper& stepper() const { return stepper_; }
  ControllerState& state() { return state_; }
  const ControllerState& state() const { return state_; }
  const ControllerConfig& config() const { return config_; }

 private:
  ControllerConfig config_;
  ControllerState state_;
  RungeKuttaStepper stepper_;
  std::size_t modes_;
  std::vector<Complex> candidate_;
  std::vector<Complex> error_;
  std::vector<double> sc_;
};

}  // namespace specrk
