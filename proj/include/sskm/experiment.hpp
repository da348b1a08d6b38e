#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sskm/config.hpp"
#include "sskm/linear_system.hpp"
#include "sskm/rng.hpp"
#include "sskm/solver.hpp"

namespace sskm {

struct Instance {
  DenseMatrix raw;            // A before row normalization
  LinearSystem system;        // normalized A with consistently scaled b
  std::vector<double> x_hat;  // k-sparse ground truth
  std::vector<double> b;      // raw A * x_hat
};

// i.i.d. standard normal A, x_hat with exactly k standard normal nonzeros at
// uniformly chosen positions, b = A x_hat. Throws InvalidSparsity.
Instance gaussian_instance(std::size_t m, std::size_t n, std::size_t k, Rng& rng);

// Synthetic k-sparse ground truth for a given matrix. Zero rows must have
// been removed (see drop_zero_rows).
Instance planted_instance(const DenseMatrix& raw, std::size_t k, Rng& rng);

struct ZeroRowFilter {
  DenseMatrix matrix;
  std::vector<std::size_t> dropped;
};
ZeroRowFilter drop_zero_rows(const DenseMatrix& raw);

struct NoisyRhs {
  std::vector<double> b_delta;
  double delta_2 = 0.0;    // |b_delta - b|_2 = level * |b|_2
  double delta_inf = 0.0;  // |b_delta - b|_inf
};

// Gaussian direction rescaled to relative 2-norm `level`.
NoisyRhs add_noise(std::span<const double> b, double level, Rng& rng);

// Runs fn(0..count-1) on a pool of worker threads. Each index is visited
// exactly once; the first exception is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

struct TrialResult {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double final_mse = 0.0;
  std::size_t iterations = 0;
  double cpu_seconds = 0.0;  // solve only
  bool converged = false;
  IterationTrace trace;
};

// Solve one instance and time the solve on the calling thread's CPU clock.
TrialResult run_trial(const LinearSystem& system, std::span<const double> x_hat,
                      const SolverSpec& spec, std::size_t trial);

// (cell coordinates, stat, value)
struct GridRow {
  std::string experiment_id;
  std::string method;
  std::string step;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  double lambda = 0.0;
  std::string beta;
  double noise = 0.0;
  std::string stat;
  double value = 0.0;
};

struct TraceBand {
  std::string experiment_id;
  std::size_t k_iter = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct RealBenchRow {
  std::string matrix;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t dropped_rows = 0;
  double density = 0.0;
  double cond = 0.0;
  double sigma_min_tilde = 0.0;
  std::string method;
  bool converged = false;  // every trial reached the MSE target
  double mean_iterations = 0.0;
  double mean_cpu_seconds = 0.0;
};

struct ExperimentReport {
  std::vector<GridRow> grid;
  std::vector<TraceBand> bands;
  std::vector<RealBenchRow> real;
  std::vector<std::string> errors;  // per-input failures that did not abort the run
  std::vector<std::filesystem::path> files;
};

// Single solve on a Gaussian instance: trace.csv and summary.csv.
ExperimentReport solve_single(const ExperimentConfig& cfg);
// Best lambda per (m, k) cell: lambda_grid.csv.
ExperimentReport sweep_lambda(const ExperimentConfig& cfg);
// Mean and standard deviation of MSE per (step, beta): beta_grid.csv.
ExperimentReport sweep_beta(const ExperimentConfig& cfg);
// MSE grids per method and step, plus convergence traces and quantile bands:
// mse_grid.csv, trials.csv, traces.csv, trace_bands.csv.
ExperimentReport compare_methods(const ExperimentConfig& cfg);
// RK / SRK / SSKM on user-supplied MatrixMarket files: real_bench.csv.
ExperimentReport real_matrix_bench(const std::vector<std::filesystem::path>& paths,
                                   const ExperimentConfig& cfg);

// Median and quartiles by linear interpolation between order statistics.
double quantile(std::vector<double> values, double p);

}  // namespace sskm
