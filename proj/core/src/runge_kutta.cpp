#include "specrk/runge_kutta.hpp"

#include <algorithm>
#include <cmath>

#include "specrk/error.hpp"

namespace specrk {

namespace {

void check_finite(std::span<const Complex> v, const char* what) {
  for (const Complex& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      fail(ErrorCategory::non_finite_state, std::string("non-finite value in ") + what);
    }
  }
}

void check_sizes(std::size_t expected, std::span<const Complex> y, std::span<Complex> y_new) {
  if (y.size() != expected || y_new.size() != expected) {
    fail(ErrorCategory::shape_mismatch, "step: state size differs from the stepper size");
  }
}

}  // namespace

RungeKuttaStepper::RungeKuttaStepper(ButcherPair pair, std::size_t size)
    : pair_(std::move(pair)),
      size_(size),
      fsal_(pair_.is_fsal()),
      k_(static_cast<std::size_t>(pair_.stages), std::vector<Complex>(size)),
      stage_(size) {}

StepOutcome RungeKuttaStepper::step(const OdeRhs& f, double t, std::span<const Complex> y, double h,
                                    std::span<Complex> y_new, std::span<Complex> error) {
  check_sizes(size_, y, y_new);
  if (!(h > 0.0)) fail(ErrorCategory::invalid_argument, "step: h must be positive");
  const int s = pair_.stages;
  StepOutcome out;
  if (handed_over_) {
    std::swap(k_.front(), k_.back());
    handed_over_ = false;
  }

  if (!cache_valid_) {
    f(t, y, k_[0]);
    ++out.rhs_evals;
    check_finite(k_[0], "stage 1");
  }
  // Cache consumed: it is refreshed only by accept().
  cache_valid_ = false;

  for (int i = 1; i < s; ++i) {
    std::fill(stage_.begin(), stage_.end(), Complex{});
    for (int j = 0; j < i; ++j) {
      const double a = pair_.A(i, j);
      if (a == 0.0) continue;
      const auto& kj = k_[static_cast<std::size_t>(j)];
      for (std::size_t e = 0; e < size_; ++e) stage_[e] += a * kj[e];
    }
    for (std::size_t e = 0; e < size_; ++e) stage_[e] = y[e] + h * stage_[e];
    f(t + pair_.c[static_cast<std::size_t>(i)] * h, stage_, k_[static_cast<std::size_t>(i)]);
    ++out.rhs_evals;
    check_finite(k_[static_cast<std::size_t>(i)], "stage derivative");
  }

  if (fsal_) {
    // The last stage input is y + h sum b_j k_j, formed in the same order.
    std::copy(stage_.begin(), stage_.end(), y_new.begin());
  } else {
    std::fill(y_new.begin(), y_new.end(), Complex{});
    for (int j = 0; j < s; ++j) {
      const double b = pair_.b[static_cast<std::size_t>(j)];
      if (b == 0.0) continue;
      const auto& kj = k_[static_cast<std::size_t>(j)];
      for (std::size_t e = 0; e < size_; ++e) y_new[e] += b * kj[e];
    }
    for (std::size_t e = 0; e < size_; ++e) y_new[e] = y[e] + h * y_new[e];
  }
  check_finite(y_new, "new state");

  if (pair_.has_embedded() && !error.empty()) {
    if (error.size() != size_) fail(ErrorCategory::shape_mismatch, "step: error buffer size");
    std::fill(error.begin(), error.end(), Complex{});
    for (int j = 0; j < s; ++j) {
      const double d = pair_.b[static_cast<std::size_t>(j)] - pair_.b_hat[static_cast<std::size_t>(j)];
      if (d == 0.0) continue;
      const auto& kj = k_[static_cast<std::size_t>(j)];
      for (std::size_t e = 0; e < size_; ++e) error[e] += d * kj[e];
    }
    for (std::size_t e = 0; e < size_; ++e) error[e] *= h;
    out.has_error = true;
  }
  return out;
}

void RungeKuttaStepper::accept() {
  if (!fsal_) return;
  handed_over_ = true;
  cache_valid_ = true;
}

StepperHistory RungeKuttaStepper::history() const {
  StepperHistory h;
  if (cache_valid_) {
    h.valid = true;
    h.derivative = handed_over_ ? k_.back() : k_.front();
  }
  return h;
}

void RungeKuttaStepper::restore(const StepperHistory& history) {
  if (!history.valid || !fsal_) {
    cache_valid_ = false;
    return;
  }
  if (history.derivative.size() != size_) {
    fail(ErrorCategory::shape_mismatch, "restore: cached derivative has the wrong size");
  }
  k_.front() = history.derivative;
  handed_over_ = false;
  cache_valid_ = true;
}

Ab2Stepper::Ab2Stepper(std::size_t size)
    : size_(size), bootstrap_(make_rk4(), size), f_prev_(size), f_curr_(size) {}

StepOutcome Ab2Stepper::step(const OdeRhs& f, double t, std::span<const Complex> y, double h,
                             std::span<Complex> y_new, std::span<Complex> /*error*/) {
  check_sizes(size_, y, y_new);
  if (!(h > 0.0)) fail(ErrorCategory::invalid_argument, "step: h must be positive");
  h_last_ = h;
  accepted_ = false;
  if (!have_prev_) {
    bootstrap_.invalidate();
    StepOutcome out = bootstrap_.step(f, t, y, h, y_new, {});
    const auto k1 = bootstrap_.start_derivative();
    std::copy(k1.begin(), k1.end(), f_curr_.begin());
    return out;
  }
  f(t, y, f_curr_);
  check_finite(f_curr_, "derivative");
  // Variable-step form; reduces to (3/2, -1/2) when h equals the previous step.
  const double r = h / h_prev_;
  const double w_curr = 1.0 + 0.5 * r;
  const double w_prev = 0.5 * r;
  for (std::size_t e = 0; e < size_; ++e) {
    y_new[e] = y[e] + h * (w_curr * f_curr_[e] - w_prev * f_prev_[e]);
  }
  check_finite(y_new, "new state");
  return {1, false};
}

void Ab2Stepper::accept() {
  std::swap(f_prev_, f_curr_);
  h_prev_ = h_last_;
  have_prev_ = true;
  accepted_ = true;
}

StepperHistory Ab2Stepper::history() const {
  StepperHistory h;
  if (have_prev_) {
    h.valid = true;
    h.h_prev = h_prev_;
    h.derivative = f_prev_;
  }
  return h;
}

void Ab2Stepper::restore(const StepperHistory& history) {
  have_prev_ = history.valid;
  if (!have_prev_) return;
  if (history.derivative.size() != size_) {
    fail(ErrorCategory::shape_mismatch, "restore: previous derivative has the wrong size");
  }
  f_prev_ = history.derivative;
  h_prev_ = history.h_prev;
  accepted_ = false;
}

std::unique_ptr<Stepper> make_stepper(const std::string& name, std::size_t size) {
  if (name == "ab2") return std::make_unique<Ab2Stepper>(size);
  return std::make_unique<RungeKuttaStepper>(make_pair(name), size);
}

RkStepResult rk_step(const OdeRhs& f, std::span<const Complex> y, double t, double h,
                     const ButcherPair& pair) {
  RungeKuttaStepper stepper(pair, y.size());
  RkStepResult out;
  out.y_new.resize(y.size());
  if (pair.has_embedded()) out.error.resize(y.size());
  out.rhs_evals = stepper.step(f, t, y, h, out.y_new, out.error).rhs_evals;
  return out;
}

Ab2StepResult ab2_step(const OdeRhs& f, std::span<const Complex> y, double t, double h,
                       std::span<const Complex> f_prev) {
  if (f_prev.empty()) {
    fail(ErrorCategory::bootstrap_required, "ab2_step: no previous derivative; bootstrap first");
  }
  if (f_prev.size() != y.size()) fail(ErrorCategory::shape_mismatch, "ab2_step: f_prev size");
  Ab2StepResult out;
  out.f_curr.resize(y.size());
  out.y_new.resize(y.size());
  f(t, y, out.f_curr);
  check_finite(out.f_curr, "derivative");
  for (std::size_t e = 0; e < y.size(); ++e) {
    out.y_new[e] = y[e] + h * (1.5 * out.f_curr[e] - 0.5 * f_prev[e]);
  }
  return out;
}

}  // namespace specrk
