#include "sskm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "sskm/errors.hpp"
#include "sskm/sampling.hpp"

namespace sskm {

namespace {

constexpr double kNonzeroEntry = 1e-12;
constexpr double kRankCutoff = 1e-10;
constexpr double kExactIntegerLimit = 9007199254740992.0;  // 2^53

void check_beta(std::size_t beta, std::size_t m) {
  if (beta < 1 || beta > m) throw InvalidBeta(beta, m);
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

// Subset-count weights w_j for the j-th largest residual (j = 0..m-1), i.e.
// C(m-1-j, beta-1), and the per-entry membership count C(m-1, beta-1). When
// the counts fit in the exact-integer range of a double they are exact
// integers; otherwise both are scaled by 1 / C(m-1, beta-1).
void subset_weights(std::size_t m, std::size_t beta, std::vector<double>& w, double& membership) {
  w.assign(m, 0.0);
  const bool exact = binomial(m, beta) * static_cast<double>(m) < kExactIntegerLimit;
  if (exact) {
    // C(n-1, k) = C(n, k) * (n - k) / n, integral at every step.
    const std::size_t k = beta - 1;
    std::uint64_t c = 1;  // c * m < 2^53 under the exactness test
    for (std::size_t i = 1; i <= k; ++i) c = c * (m - 1 - k + i) / i;  // C(m-1, k)
    membership = static_cast<double>(c);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t n = m - 1 - j;  // w_j = C(n, k)
      if (n < k) break;
      w[j] = static_cast<double>(c);
      if (n == 0) break;
      c = c * (n - k) / n;
    }
  } else {
    membership = 1.0;
    double p = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t n = m - 1 - j;
      if (n < beta - 1) break;
      w[j] = p;
      if (n == 0) break;
      p *= static_cast<double>(n - (beta - 1)) / static_cast<double>(n);
    }
  }
}

}  // namespace

double mse(std::span<const double> x, std::span<const double> x_hat) {
  if (x.size() != x_hat.size()) throw DimensionMismatch("iterate and truth lengths differ");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = x[j] - x_hat[j];
    num += d * d;
    den += x_hat[j] * x_hat[j];
  }
  if (den == 0.0) throw ZeroTruth();
  return num / den;
}

double SingularValueSummary::condition() const {
  if (sigma_min <= kRankCutoff * sigma_max) return std::numeric_limits<double>::infinity();
  return sigma_max / sigma_min;
}

SingularValueSummary singular_values(const DenseMatrix& a) {
  if (a.rows == 0 || a.cols == 0) throw ZeroMatrix();
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> map(a.values.data(), static_cast<Eigen::Index>(a.rows),
                                       static_cast<Eigen::Index>(a.cols));
  const Eigen::MatrixXd dense = map;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
  const Eigen::VectorXd s = svd.singularValues();  // decreasing

  SingularValueSummary out;
  out.sigma_max = s(0);
  if (!(out.sigma_max > 0.0)) throw ZeroMatrix();
  out.sigma_min = s(s.size() - 1);
  out.sigma_min_tilde = out.sigma_max;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kRankCutoff * out.sigma_max) out.sigma_min_tilde = s(i);
  return out;
}

SingularValueSummary smallest_nonzero_singular_value(const LinearSystem& system) {
  return singular_values(system.matrix());
}

double min_abs_nonzero(std::span<const double> x) {
  double best = std::numeric_limits<double>::infinity();
  for (double v : x)
    if (std::abs(v) > kNonzeroEntry) best = std::min(best, std::abs(v));
  if (std::isinf(best)) throw AllZero();
  return best;
}

double gamma_from_residuals(std::span<const double> residuals, std::size_t beta) {
  const std::size_t m = residuals.size();
  check_beta(beta, m);
  double peak = 0.0;
  for (double r : residuals) peak = std::max(peak, std::abs(r));
  if (peak == 0.0) throw ZeroResidual();

  // Scaling by the peak makes equal-magnitude entries exactly 1.
  std::vector<double> sq(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = std::abs(residuals[i]) / peak;
    sq[i] = s * s;
  }
  std::sort(sq.begin(), sq.end(), std::greater<>());

  std::vector<double> w;
  double membership = 0.0;
  subset_weights(m, beta, w, membership);
  double total = 0.0;
  double max_part = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    total += sq[j];
    max_part += w[j] * sq[j];
  }
  return membership * total / max_part;
}

GammaEstimate gamma_k(const LinearSystem& system, std::span<const double> x, std::size_t beta) {
  return GammaEstimate{gamma_from_residuals(system.residual(x).values, beta), 0.0, true};
}

GammaEstimate gamma_monte_carlo(std::span<const double> residuals, std::size_t beta,
                                std::size_t samples, Rng& rng) {
  const std::size_t m = residuals.size();
  check_beta(beta, m);
  if (samples < 2) throw ConfigError("Monte Carlo gamma needs at least two samples");
  SubsetSampler sampler(m);
  std::vector<double> two(samples);
  std::vector<double> inf(samples);
  double sum_two = 0.0;
  double sum_inf = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double a = 0.0;
    double c = 0.0;
    for (std::size_t i : sampler.draw(beta, rng)) {
      const double r2 = residuals[i] * residuals[i];
      a += r2;
      c = std::max(c, r2);
    }
    two[s] = a;
    inf[s] = c;
    sum_two += a;
    sum_inf += c;
  }
  if (sum_inf == 0.0) throw ZeroResidual();
  const double ratio = sum_two / sum_inf;
  const double mean_inf = sum_inf / static_cast<double>(samples);
  double var = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double d = two[s] - ratio * inf[s];
    var += d * d;
  }
  var /= static_cast<double>(samples - 1);
  const double se = std::sqrt(var / static_cast<double>(samples)) / mean_inf;
  return GammaEstimate{ratio, se, false};
}

ContractionFactor contraction_factor(double sigma, double lambda, double x_min_abs,
                                     std::size_t beta, double gamma, std::size_t m) {
  if (beta < 1 || beta > m) throw InvalidBeta(beta, m);
  const double b = static_cast<double>(beta);
  if (!(gamma >= 1.0 - 1e-12 && gamma <= b * (1.0 + 1e-12)))
    throw InvalidGamma("gamma=" + std::to_string(gamma) + " outside [1, " + std::to_string(beta) + "]");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  const double md = static_cast<double>(m);
  double q = 0.0;
  if (lambda > 0.0) {
    if (!(x_min_abs > 0.0)) throw ConfigError("|x_hat|_min must be positive");
    q = 1.0 - b * sigma * sigma / (2.0 * gamma * md) * (x_min_abs / (x_min_abs + 2.0 * lambda));
  } else {
    q = 1.0 - b * sigma * sigma / (gamma * md);
  }
  return ContractionFactor{q, q > 0.0 && q < 1.0};
}

double error_bound_margin(const DualPair& pair, const LinearSystem& system,
                          std::span<const double> x_hat, double sigma) {
  const double lambda = pair.lambda();
  const double lhs = bregman_distance(pair, x_hat);
  const double res2 = system.residual_squared_norm(pair.primal());
  if (!(sigma > 0.0)) return res2 > 0.0 ? std::numeric_limits<double>::infinity() : -lhs;
  double c = 0.0;
  if (lambda > 0.0) {
    const double xm = min_abs_nonzero(x_hat);
    c = (xm + 2.0 * lambda) / (sigma * sigma * xm);
  } else {
    c = 1.0 / (2.0 * sigma * sigma);
  }
  return c * res2 - lhs;
}

double one_two_norm(const LinearSystem& system) {
  double best = 0.0;
  for (std::size_t i = 0; i < system.rows(); ++i) {
    double s = 0.0;
    for (double v : system.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

std::vector<double> noisy_envelope(std::span<const double> q, double lambda,
                                   std::span<const double> x_hat, double delta_inf,
                                   double one_two, StepMode mode) {
  double l1 = 0.0;
  double l2 = 0.0;
  for (double v : x_hat) {
    l1 += std::abs(v);
    l2 += v * v;
  }
  const double start = 2.0 * lambda * l1 + l2;
  const double c = mode == StepMode::Exact ? 1.0 + 4.0 * lambda * one_two : 1.0;
  std::vector<double> out(q.size());
  double prod = 1.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    prod *= q[k];
    sum += q[k];
    out[k] = std::sqrt(std::max(prod, 0.0) * start) +
             std::sqrt(std::max(sum, 0.0) * delta_inf * delta_inf * c / 2.0);
  }
  return out;
}

double density(const DenseMatrix& a) {
  if (a.values.empty()) return 0.0;
  std::size_t nnz = 0;
  for (double v : a.values)
    if (std::abs(v) > 0.0) ++nnz;
  return static_cast<double>(nnz) / static_cast<double>(a.values.size());
}

TheoryTracker::TheoryTracker(LinearSystem reference, std::vector<double> x_hat, double lambda,
                             std::size_t beta, std::size_t checkpoint_every,
                             std::optional<SingularValueSummary> singular)
    : reference_(std::move(reference)),
      x_hat_(std::move(x_hat)),
      lambda_(lambda),
      beta_(beta),
      every_(std::max<std::size_t>(checkpoint_every, 1)) {
  check_beta(beta, reference_.rows());
  const SingularValueSummary sv = singular ? *singular : smallest_nonzero_singular_value(reference_);
  report_.sigma_min_tilde = sv.sigma_min_tilde;
  report_.sigma_min = sv.sigma_min;
  report_.sigma_max = sv.sigma_max;
  report_.x_min_abs = min_abs_nonzero(x_hat_);
  report_.one_two_norm = one_two_norm(reference_);
}

void TheoryTracker::observe(const StepEvent& event) {
  if (event.k % every_ != 0) return;
  const auto residual = reference_.residual(event.before.primal());
  TheoryCheckpoint cp;
  cp.k = event.k;
  const double sigma = lambda_ > 0.0 ? report_.sigma_min_tilde : report_.sigma_min;
  if (residual.squared_norm() > 0.0) {
    cp.gamma = gamma_from_residuals(residual.values, beta_);
    cp.q = contraction_factor(sigma, lambda_, report_.x_min_abs, beta_, cp.gamma,
                              reference_.rows()).value;
  }
  cp.bregman_before = bregman_distance(event.before, x_hat_);
  cp.bregman_after = bregman_distance(event.after, x_hat_);
  auto dist = [&](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - x_hat_[j]) * (x[j] - x_hat_[j]);
    return std::sqrt(s);
  };
  cp.error_before = dist(event.before.primal());
  cp.error_after = dist(event.after.primal());
  cp.bound_margin = error_bound_margin(event.before, reference_, x_hat_, sigma);
  report_.checkpoints.push_back(cp);
}

StepObserver TheoryTracker::observer() {
  return [this](const StepEvent& e) { observe(e); };
}

}  // namespace sskm
