#include "specrk/step_control.hpp"

#include <algorithm>
#include <cmath>

#include "specrk/error.hpp"

namespace specrk {

void ControllerConfig::validate() const {
  if (!(tol_abs > 0.0) || !(tol_rel > 0.0)) {
    fail(ErrorCategory::invalid_argument, "tolerances must be positive");
  }
  if (!(safety > 0.0 && safety < 1.0)) fail(ErrorCategory::invalid_argument, "safety must be in (0,1)");
  if (!(shrink_floor > 0.0 && shrink_floor < 1.0 && growth_cap > 1.0)) {
    fail(ErrorCategory::invalid_argument, "need 0 < shrink floor < 1 < growth cap");
  }
  if (embedded_order < 1) fail(ErrorCategory::invalid_argument, "embedded order must be >= 1");
  if (!(h0 > 0.0)) fail(ErrorCategory::invalid_argument, "h0 must be positive");
  if (h_min < 0.0) fail(ErrorCategory::invalid_argument, "h_min must be >= 0");
}

void scale_vector(std::span<const Complex> u_prev, std::span<const Complex> u_new,
                  const ControllerConfig& config, std::span<double> sc) {
  if (u_prev.size() != u_new.size() || sc.size() != u_new.size()) {
    fail(ErrorCategory::shape_mismatch, "scale_vector: sizes differ");
  }
  for (std::size_t i = 0; i < sc.size(); ++i) {
    sc[i] = config.tol_abs + std::max(std::abs(u_prev[i]), std::abs(u_new[i])) * config.tol_rel;
  }
}

double error_norm(std::span<const Complex> delta, std::span<const double> sc, std::size_t modes) {
  if (modes == 0 || delta.size() != sc.size() || delta.size() % modes != 0) {
    fail(ErrorCategory::shape_mismatch, "error_norm: sizes are not whole components");
  }
  const std::size_t components = delta.size() / modes;
  double err = 0.0;
  for (std::size_t j = 0; j < components; ++j) {
    double sum = 0.0;
    for (std::size_t m = j * modes; m < (j + 1) * modes; ++m) {
      if (!(sc[m] > 0.0)) fail(ErrorCategory::invalid_scale, "error_norm: scale vector must be positive");
      sum += std::norm(delta[m] / sc[m]);
    }
    const double e = std::sqrt(sum / static_cast<double>(modes));
    if (std::isnan(e)) return e;
    err = std::max(err, e);
  }
  return err;
}

double error_norm(std::span<const Complex> u_main, std::span<const Complex> u_embedded,
                  std::span<const double> sc, std::size_t modes) {
  if (u_main.size() != u_embedded.size()) fail(ErrorCategory::shape_mismatch, "error_norm: sizes differ");
  std::vector<Complex> delta(u_main.size());
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = u_main[i] - u_embedded[i];
  return error_norm(delta, sc, modes);
}

Proposal propose_step(double err, ControllerState& state, const ControllerConfig& config) {
  if (err < 0.0) fail(ErrorCategory::invalid_argument, "propose_step: negative error");
  if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
  const double cap = state.prev_rejected ? 1.0 : config.growth_cap;
  double factor;
  if (err == 0.0) {
    factor = cap;
  } else {
    const double grow = config.safety / std::pow(err, 1.0 / (config.embedded_order + 1));
    factor = std::min(cap, std::max(config.shrink_floor, grow));
  }
  Proposal p;
  p.accepted = err <= 1.0;
  p.h_new = state.h * factor;
  if (p.accepted) {
    ++state.acceptance_count;
  } else {
    ++state.rejection_count;
  }
  state.prev_rejected = !p.accepted;
  if (p.h_new < config.effective_h_min()) {
    fail(ErrorCategory::step_size_underflow, "step size fell below h_min");
  }
  return p;
}

AdaptiveIntegrator::AdaptiveIntegrator(ButcherPair pair, ControllerConfig config, std::size_t modes,
                                       std::size_t components)
    : config_(config),
      stepper_(std::move(pair), modes * components),
      modes_(modes),
      candidate_(modes * components),
      error_(modes * components),
      sc_(modes * components) {
  if (!stepper_.has_embedded()) {
    fail(ErrorCategory::invalid_argument, stepper_.name() + " has no embedded error estimator");
  }
  config_.validate();
  state_.h = config_.h0;
}

AdvanceResult AdaptiveIntegrator::advance(const OdeRhs& f, double& t, std::span<Complex> y,
                                          double t_limit) {
  if (!(t < t_limit)) fail(ErrorCategory::invalid_argument, "advance: already at the time limit");
  AdvanceResult out;
  const OdeRhs counted = [&](double tt, std::span<const Complex> yy, std::span<Complex> dy) {
    ++out.rhs_evals;
    f(tt, yy, dy);
  };
  for (;;) {
    const double h_planned = state_.h;
    double h_try = h_planned;
    const bool clamped = t + h_try * (1.0 + 1e-10) >= t_limit;
    if (clamped) h_try = t_limit - t;

    double err;
    try {
      stepper_.step(counted, t, y, h_try, candidate_, error_);
      scale_vector(y, candidate_, config_, sc_);
      err = error_norm(error_, sc_, modes_);
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::non_finite_state) throw;
      err = std::numeric_limits<double>::infinity();
    }

    state_.h = h_try;
    const Proposal p = propose_step(err, state_, config_);
    if (p.accepted) {
      std::copy(candidate_.begin(), candidate_.end(), y.begin());
      t = clamped ? t_limit : t + h_try;
      stepper_.accept();
      state_.h = clamped ? h_planned : p.h_new;
      out.h_used = h_try;
      out.clamped = clamped;
      return out;
    }
    stepper_.invalidate();
    state_.h = p.h_new;
    ++out.rejections;
  }
}

}  // namespace specrk
