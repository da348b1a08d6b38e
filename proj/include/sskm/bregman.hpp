#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Bregman geometry of f(x) = lambda * |x|_1 + 1/2 * |x|_2^2.
//
// f is 1-strongly convex, its conjugate is f*(x*) = 1/2 |S_lambda(x*)|^2 and
// grad f* = S_lambda, the componentwise soft-thresholding map.

namespace sskm {

enum class StepMode { Inexact, Exact };

std::string_view to_string(StepMode mode);

double soft_threshold(double v, double lambda);
void soft_threshold(std::span<const double> v, double lambda, std::span<double> out);
std::vector<double> soft_threshold(std::span<const double> v, double lambda);

double objective_value(std::span<const double> x, double lambda);
double conjugate_value(std::span<const double> xstar, double lambda);

class RegularizedObjective {
 public:
  // Throws ConfigError for lambda < 0.
  explicit RegularizedObjective(double lambda);

  double lambda() const noexcept { return lambda_; }
  double value(std::span<const double> x) const { return objective_value(x, lambda_); }
  double conjugate(std::span<const double> xstar) const { return conjugate_value(xstar, lambda_); }

 private:
  double lambda_;
};

// A primal point together with a subgradient of f at it. The primal half is
// always S_lambda(dual); no mutator can break that link.
class DualPair {
 public:
  DualPair(std::vector<double> dual, double lambda);
  static DualPair zero(std::size_t n, double lambda);

  std::span<const double> primal() const noexcept { return primal_; }
  std::span<const double> dual() const noexcept { return dual_; }
  double lambda() const noexcept { return lambda_; }
  std::size_t size() const noexcept { return dual_.size(); }

  // dual -= t * direction, then primal = S_lambda(dual).
  void shift_dual(double t, std::span<const double> direction);

 private:
  std::vector<double> primal_;
  std::vector<double> dual_;
  double lambda_;
};

// D_f^{x*}(x, y) = f(y) - f(x) - <x*, y - x> with (x, x*) = pair.
double bregman_distance(const DualPair& pair, std::span<const double> y);

// <a, x> - b. For unit-norm a this is the orthogonal-projection step.
double inexact_step(std::span<const double> x, std::span<const double> a, double b);

// Minimizer of g(t) = f*(dual - t a) + t b. g' is nondecreasing and piecewise
// linear with kinks where |dual_j - t a_j| = lambda, so the root is located by
// bisection over the sorted kinks followed by linear interpolation on the
// bracketing segment. When g' vanishes on an interval the midpoint is returned.
//
// Throws NumericalFailure when a is (numerically) zero.
double exact_step(std::span<const double> dual, std::span<const double> a, double b,
                  double lambda);

// Step length for the given mode at the current pair.
double step_length(const DualPair& pair, std::span<const double> a, double b, StepMode mode);

// Bregman projection of pair onto {x : <a, x> = b} (Exact) or its relaxed
// inexact counterpart. a must have unit norm.
DualPair project_hyperplane(const DualPair& pair, std::span<const double> a, double b,
                            StepMode mode);

}  // namespace sskm
