#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "specrk/butcher.hpp"
#include "specrk/grid.hpp"

namespace specrk {

/// dy/dt = f(t, y) on a flat complex state.
using OdeRhs = std::function<void(double t, std::span<const Complex> y, std::span<Complex> dydt)>;

struct StepOutcome {
  int rhs_evals = 0;
  bool has_error = false;
};

/// What a stepper carries from one step to the next, for checkpoints.
struct StepperHistory {
  bool valid = false;
  double h_prev = 0.0;
  std::vector<Complex> derivative;
};

/// One-step time integrator with optional state carried between steps.
///
/// Protocol: step() computes a candidate; the caller then either calls
/// accept() (candidate becomes the new solution) or invalidate() (candidate
/// discarded, or the solution was modified externally).
class Stepper {
 public:
  virtual ~Stepper() = default;

  virtual const std::string& name() const = 0;
  virtual bool has_embedded() const = 0;
  virtual std::size_t size() const = 0;

  /// `error` receives y_main - y_embedded and may be empty for methods without one.
  virtual StepOutcome step(const OdeRhs& f, double t, std::span<const Complex> y, double h,
                           std::span<Complex> y_new, std::span<Complex> error) = 0;
  virtual void accept() = 0;
  virtual void invalidate() = 0;

  /// f(t, y) at the start of the most recent step() call, also after accept().
  virtual std::span<const Complex> start_derivative() const = 0;

  virtual StepperHistory history() const = 0;
  virtual void restore(const StepperHistory& history) = 0;
};

/// Generic explicit Runge-Kutta stepper driven by a Butcher tableau.
/// For FSAL tableaux an accepted step hands its last stage to the next step.
class RungeKuttaStepper final : public Stepper {
 public:
  RungeKuttaStepper(ButcherPair pair, std::size_t size);

  const ButcherPair& pair() const { return pair_; }
  const std::string& name() const override { return pair_.name; }
  bool has_embedded() const override { return pair_.has_embedded(); }
  std::size_t size() const override { return size_; }

  StepOutcome step(const OdeRhs& f, double t, std::span<const Complex> y, double h,
                   std::span<Complex> y_new, std::span<Complex> error) override;
  void accept() override;
  void invalidate() override { cache_valid_ = false; }
  bool cache_valid() const { return cache_valid_; }

  std::span<const Complex> start_derivative() const override { return k_.front(); }

  StepperHistory history() const override;
  void restore(const StepperHistory& history) override;

 private:
  ButcherPair pair_;
  std::size_t size_;
  bool fsal_;
  bool cache_valid_ = false;
  // After an FSAL accept the last stage is the next first stage; the swap is
  // deferred to the next step() so start_derivative() stays valid.
  bool handed_over_ = false;
  std::vector<std::vector<Complex>> k_;
  std::vector<Complex> stage_;
};

/// Two-step Adams-Bashforth. The first step (no history) is one RK4 step of
/// the same size, whose first stage becomes f_prev.
class Ab2Stepper final : public Stepper {
 public:
  explicit Ab2Stepper(std::size_t size);

  const std::string& name() const override { return name_; }
  bool has_embedded() const override { return false; }
  std::size_t size() const override { return size_; }

  StepOutcome step(const OdeRhs& f, double t, std::span<const Complex> y, double h,
                   std::span<Complex> y_new, std::span<Complex> error) override;
  void accept() override;
  /// Keeps f_prev: it stays the derivative at the previous step point.
  void invalidate() override {}

  std::span<const Complex> start_derivative() const override {
    return accepted_ ? f_prev_ : f_curr_;
  }

  StepperHistory history() const override;
  void restore(const StepperHistory& history) override;

 private:
  std::string name_ = "ab2";
  std::size_t size_;
  RungeKuttaStepper bootstrap_;
  bool have_prev_ = false;
  bool accepted_ = false;
  double h_prev_ = 0.0;
  double h_last_ = 0.0;
  std::vector<Complex> f_prev_;
  std::vector<Complex> f_curr_;
};

/// "ab2", or any name accepted by make_pair.
std::unique_ptr<Stepper> make_stepper(const std::string& name, std::size_t size);

struct RkStepResult {
  std::vector<Complex> y_new;
  /// Empty without an embedded estimator.
  std::vector<Complex> error;
  int rhs_evals = 0;
};

/// Single stand-alone step (no FSAL carry-over).
RkStepResult rk_step(const OdeRhs& f, std::span<const Complex> y, double t, double h,
                     const ButcherPair& pair);

struct Ab2StepResult {
  std::vector<Complex> y_new;
  std::vector<Complex> f_curr;
};

/// y_new = y + h (3/2 f(t, y) - 1/2 f_prev). Throws Error(bootstrap_required)
/// when f_prev is empty.
Ab2StepResult ab2_step(const OdeRhs& f, std::span<const Complex> y, double t, double h,
                       std::span<const Complex> f_prev);

}  // namespace specrk
