#pragma once

#include <string>
#include <vector>

namespace specrk {

/// Explicit Runge-Kutta method, optionally with an embedded error estimator.
struct ButcherPair {
  std::string name;
  int stages = 0;
  /// Row-major stages x stages, strictly lower triangular.
  std::vector<double> a;
  std::vector<double> b;
  /// Empty for methods without an embedded estimator.
  std::vector<double> b_hat;
  std::vector<double> c;
  int order = 0;
  int embedded_order = 0;

  double A(int i, int j) const { return a[static_cast<std::size_t>(i * stages + j)]; }
  bool has_embedded() const { return !b_hat.empty(); }
  /// Last row of A equals b (and b_s = 0, c_s = 1): the final stage of a step
  /// is the derivative at the new solution.
  bool is_fsal() const;
};

ButcherPair make_rk4();
ButcherPair make_dp5();
ButcherPair make_bs5();
ButcherPair make_kcl5();

/// Looks up "rk4", "dp5", "bs5" or "kcl5". Throws Error(invalid_argument) otherwise.
ButcherPair make_pair(const std::string& name);

struct OrderResiduals {
  /// main[p-1] is the largest |Phi(t) - 1/gamma(t)| over rooted trees of order p, for b.
  std::vector<double> main;
  /// Same for b_hat; empty when the pair has no estimator.
  std::vector<double> embedded;
};

/// Evaluates every rooted-tree order condition up to `order` (at most 5).
/// Throws Error(unsupported_order) for larger orders.
OrderResiduals verify_order_conditions(const ButcherPair& pair, int order);

}  // namespace specrk
