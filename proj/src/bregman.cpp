#include "sskm/bregman.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sskm/errors.hpp"
#include "sskm/linear_system.hpp"

namespace sskm {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be nonnegative, got " + std::to_string(lambda));
}

// g'(t) = b - <a, S_lambda(dual - t a)>
double step_derivative(std::span<const double> dual, std::span<const double> a, double b,
                       double lambda, double t) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0.0) continue;
    s += a[j] * soft_threshold(dual[j] - t * a[j], lambda);
  }
  return b - s;
}

// Zero of the line through (t0, g0) and (t1, g1).
double interpolate_root(double t0, double g0, double t1, double g1) {
  if (g1 == g0) return 0.5 * (t0 + t1);
  return t0 - g0 * (t1 - t0) / (g1 - g0);
}

}  // namespace

std::string_view to_string(StepMode mode) {
  return mode == StepMode::Exact ? "exact" : "inexact";
}

double soft_threshold(double v, double lambda) {
  if (v > lambda) return v - lambda;
  if (v < -lambda) return v + lambda;
  return 0.0;
}

void soft_threshold(std::span<const double> v, double lambda, std::span<double> out) {
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = soft_threshold(v[j], lambda);
}

std::vector<double> soft_threshold(std::span<const double> v, double lambda) {
  check_lambda(lambda);
  std::vector<double> out(v.size());
  soft_threshold(v, lambda, out);
  return out;
}

double objective_value(std::span<const double> x, double lambda) {
  double l1 = 0.0;
  double l2 = 0.0;
  for (double v : x) {
    l1 += std::abs(v);
    l2 += v * v;
  }
  return lambda * l1 + 0.5 * l2;
}

double conjugate_value(std::span<const double> xstar, double lambda) {
  check_lambda(lambda);
  double s = 0.0;
  for (double v : xstar) {
    const double shrunk = soft_threshold(v, lambda);
    s += shrunk * shrunk;
  }
  return 0.5 * s;
}

RegularizedObjective::RegularizedObjective(double lambda) : lambda_(lambda) {
  check_lambda(lambda);
}

DualPair::DualPair(std::vector<double> dual, double lambda)
    : primal_(dual.size()), dual_(std::move(dual)), lambda_(lambda) {
  check_lambda(lambda);
  soft_threshold(dual_, lambda_, primal_);
}

DualPair DualPair::zero(std::size_t n, double lambda) {
  return DualPair(std::vector<double>(n, 0.0), lambda);
}

void DualPair::shift_dual(double t, std::span<const double> direction) {
  if (direction.size() != dual_.size())
    throw DimensionMismatch("direction length does not match iterate length");
  for (std::size_t j = 0; j < dual_.size(); ++j) {
    dual_[j] -= t * direction[j];
    primal_[j] = soft_threshold(dual_[j], lambda_);
  }
}

double bregman_distance(const DualPair& pair, std::span<const double> y) {
  const auto x = pair.primal();
  const auto xs = pair.dual();
  if (y.size() != x.size()) throw DimensionMismatch("point length does not match iterate length");
  double inner = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) inner += xs[j] * (y[j] - x[j]);
  const double d = objective_value(y, pair.lambda()) - objective_value(x, pair.lambda()) - inner;
  // Rounding can push an exact zero slightly negative.
  return std::max(d, 0.0);
}

double inexact_step(std::span<const double> x, std::span<const double> a, double b) {
  if (x.size() != a.size()) throw DimensionMismatch("row length does not match iterate length");
  return dot(a, x) - b;
}

double exact_step(std::span<const double> dual, std::span<const double> a, double b,
                  double lambda) {
  check_lambda(lambda);
  if (dual.size() != a.size()) throw DimensionMismatch("row length does not match iterate length");

  double slope = 0.0;  // g' slope on both outer rays, where every coordinate is active
  std::vector<double> kinks;
  kinks.reserve(2 * a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0.0) continue;
    slope += a[j] * a[j];
    kinks.push_back((dual[j] - lambda) / a[j]);
    kinks.push_back((dual[j] + lambda) / a[j]);
  }
  if (!(slope > 1e-28) || kinks.empty())
    throw NumericalFailure("exact step: row is numerically zero, no root of g'");
  std::sort(kinks.begin(), kinks.end());

  auto deriv = [&](double t) { return step_derivative(dual, a, b, lambda, t); };

  // First kink index where pred(g'(kink)) holds; g' is nondecreasing so pred
  // is monotone along the sorted kinks.
  auto first_kink = [&](auto pred, double& g_at, double& g_before) {
    std::size_t lo = 0;
    std::size_t hi = kinks.size();
    g_at = 0.0;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (pred(deriv(kinks[mid])))
        hi = mid;
      else
        lo = mid + 1;
    }
    if (lo < kinks.size()) g_at = deriv(kinks[lo]);
    g_before = lo > 0 ? deriv(kinks[lo - 1]) : 0.0;
    return lo;
  };

  // Leftmost and rightmost roots of g'.
  auto root_between = [&](std::size_t idx, double g_at, double g_before) {
    if (idx == 0) return kinks.front() - g_at / slope;
    if (idx == kinks.size()) return kinks.back() - g_before / slope;
    return interpolate_root(kinks[idx - 1], g_before, kinks[idx], g_at);
  };

  double g_at = 0.0;
  double g_before = 0.0;
  const std::size_t left_idx = first_kink([](double g) { return g >= 0.0; }, g_at, g_before);
  const double left = root_between(left_idx, g_at, g_before);
  const std::size_t right_idx = first_kink([](double g) { return g > 0.0; }, g_at, g_before);
  const double right = root_between(right_idx, g_at, g_before);

  const double t = 0.5 * (left + right);
  if (!std::isfinite(t)) throw NumericalFailure("exact step: non-finite root");
  return t;
}

double step_length(const DualPair& pair, std::span<const double> a, double b, StepMode mode) {
  return mode == StepMode::Exact ? exact_step(pair.dual(), a, b, pair.lambda())
                                 : inexact_step(pair.primal(), a, b);
}

DualPair project_hyperplane(const DualPair& pair, std::span<const double> a, double b,
                            StepMode mode) {
  DualPair out = pair;
  out.shift_dual(step_length(pair, a, b, mode), a);
  return out;
}

}  // namespace sskm
