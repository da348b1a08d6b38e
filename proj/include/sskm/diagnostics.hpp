#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sskm/bregman.hpp"
#include "sskm/linear_system.hpp"
#include "sskm/rng.hpp"
#include "sskm/solver.hpp"

// Runtime versions of the convergence theory for the sparse Kaczmarz family:
// error bounds, contraction factors and the noisy-data envelopes.

namespace sskm {

// |x - x_hat|^2 / |x_hat|^2. Throws ZeroTruth when x_hat == 0.
double mse(std::span<const double> x, std::span<const double> x_hat);

struct SingularValueSummary {
  double sigma_min_tilde = 0.0;  // smallest singular value above 1e-10 * sigma_max
  double sigma_min = 0.0;        // smallest of the min(m, n) singular values, may be ~0
  double sigma_max = 0.0;

  // sigma_max / sigma_min, infinite when sigma_min is below the rank cutoff.
  double condition() const;
};

// Dense SVD. Throws ZeroMatrix when every singular value is zero.
SingularValueSummary singular_values(const DenseMatrix& a);
SingularValueSummary smallest_nonzero_singular_value(const LinearSystem& system);

// Smallest |x_j| over entries with |x_j| > 1e-12. Throws AllZero.
double min_abs_nonzero(std::span<const double> x);

struct GammaEstimate {
  double value = 1.0;
  double standard_error = 0.0;
  bool exact = true;
};

// Ratio of subset-summed squared 2-norms to subset-summed squared inf-norms of
// the residual over all C(m, beta) subsets. Computed exactly in O(m log m):
// after sorting |r| in decreasing order, the j-th largest entry is the subset
// maximum for exactly C(m - j, beta - 1) subsets, and every entry belongs to
// C(m - 1, beta - 1) subsets. Throws ZeroResidual and InvalidBeta.
double gamma_from_residuals(std::span<const double> residuals, std::size_t beta);
GammaEstimate gamma_k(const LinearSystem& system, std::span<const double> x, std::size_t beta);

// Unbiased-ratio Monte Carlo estimate over uniformly sampled subsets.
GammaEstimate gamma_monte_carlo(std::span<const double> residuals, std::size_t beta,
                                std::size_t samples, Rng& rng);

struct ContractionFactor {
  double value = 1.0;
  bool in_unit_interval = true;  // false flags the q <= 0 regime
};

// Expected per-step Bregman contraction of SSKM. For lambda > 0 pass the
// smallest nonzero singular value, for lambda == 0 the smallest singular value.
// Throws InvalidGamma unless 1 <= gamma <= beta <= m.
ContractionFactor contraction_factor(double sigma, double lambda, double x_min_abs,
                                     std::size_t beta, double gamma, std::size_t m);

// RHS - LHS of the error bound D(x, x_hat) <= C * |Ax - b|^2 with
// C = (|x_hat|_min + 2 lambda) / (sigma^2 |x_hat|_min) for lambda > 0 and
// C = 1 / (2 sigma^2) for lambda == 0. Negative values violate the bound.
double error_bound_margin(const DualPair& pair, const LinearSystem& system,
                          std::span<const double> x_hat, double sigma);

// max_i |a_i|_1 over the normalized rows.
double one_two_norm(const LinearSystem& system);

// Envelope on E|x_{k+1} - x_hat|_2 for k = 0..q.size()-1:
//   sqrt(prod q_i * (2 lambda |x_hat|_1 + |x_hat|_2^2)) + sqrt(sum q_i * delta^2 * c / 2)
// with c = 1 for the inexact step and c = 1 + 4 lambda |A|_{1,2} for the exact one.
std::vector<double> noisy_envelope(std::span<const double> q, double lambda,
                                   std::span<const double> x_hat, double delta_inf,
                                   double one_two, StepMode mode);

// Fraction of entries with |a_ij| > 0.
double density(const DenseMatrix& a);

struct TheoryCheckpoint {
  std::size_t k = 0;
  double gamma = 1.0;
  double q = 1.0;
  double bregman_before = 0.0;  // D_k
  double bregman_after = 0.0;   // D_{k+1}
  double error_before = 0.0;    // |x_k - x_hat|_2
  double error_after = 0.0;     // |x_{k+1} - x_hat|_2
  double bound_margin = 0.0;    // error_bound_margin at x_k
};

struct TheoryReport {
  double sigma_min_tilde = 0.0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double x_min_abs = 0.0;
  double one_two_norm = 0.0;
  double delta = 0.0;
  std::vector<TheoryCheckpoint> checkpoints;
};

// Collects gamma_k, q_k and error-bound margins along a run. Attach
// observer() to run(). gamma_k and q_k are evaluated against the
// reference system (noiseless b), which may differ from the one solved.
class TheoryTracker {
 public:
  TheoryTracker(LinearSystem reference, std::vector<double> x_hat, double lambda,
                std::size_t beta, std::size_t checkpoint_every = 1,
                std::optional<SingularValueSummary> singular = std::nullopt);

  void observe(const StepEvent& event);
  StepObserver observer();

  void set_delta(double delta) { report_.delta = delta; }
  const TheoryReport& report() const noexcept { return report_; }

 private:
  LinearSystem reference_;
  std::vector<double> x_hat_;
  double lambda_;
  std::size_t beta_;
  std::size_t every_;
  TheoryReport report_;
};

}  // namespace sskm
