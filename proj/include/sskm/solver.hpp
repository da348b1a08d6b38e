#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sskm/bregman.hpp"
#include "sskm/linear_system.hpp"
#include "sskm/sampling.hpp"

namespace sskm {

enum class Method { RK, SRK, SSKM };

std::string_view to_string(Method method);

struct StoppingRule {
  double epsilon = 0.0;            // on |Ax - b|_2
  std::size_t max_iters = 200000;  // T
  std::optional<double> mse_target;  // wins over epsilon when ground truth is given
  std::size_t check_every = 1;     // residual-norm check interval J
};

struct SolverSpec {
  Method method = Method::SSKM;
  double lambda = 1.0;
  StepMode step_mode = StepMode::Exact;
  SamplerConfig sampler;
  StoppingRule stop;
  // Record after every trace_every-th iteration, the last one, and at
  // convergence. 0 disables records.
  std::size_t trace_every = 1;

  // RK requires lambda == 0, SSKM requires the SKM rule, RK/SRK forbid it.
  // Throws ConfigError.
  void validate() const;

  static SolverSpec rk(std::uint64_t seed);
  static SolverSpec srk(double lambda, StepMode mode, std::uint64_t seed);
  static SolverSpec sskm(double lambda, std::size_t beta, StepMode mode, std::uint64_t seed);
};

struct IterationRecord {
  std::size_t k = 0;          // iteration that produced x_{k+1}
  std::size_t index = 0;      // i_k
  double step = 0.0;          // t_k
  double residual2 = 0.0;     // |A x_{k+1} - b|_2^2
  std::optional<double> mse;  // vs ground truth, when supplied
  std::optional<double> bregman_to_truth;
};

enum class RunStatus { Converged, MaxIters };

struct IterationTrace {
  std::vector<IterationRecord> records;
  RunStatus status = RunStatus::MaxIters;
  std::size_t iterations = 0;
};

struct SolveResult {
  DualPair state;
  IterationTrace trace;
};

// Fired after every iteration when attached to run().
struct StepEvent {
  std::size_t k;
  const Selection& selection;
  double step;
  const DualPair& before;
  const DualPair& after;
};
using StepObserver = std::function<void(const StepEvent&)>;

DualPair init_state(std::size_t n, double lambda);

// One Bregman projection at the selected row.
DualPair step_once(const DualPair& state, const LinearSystem& system, const Selection& selection,
                   StepMode mode);

// Runs until the stopping rule fires. Deterministic in (system, spec).
// Throws NonFiniteIterate if the iterate stops being finite.
SolveResult run(const LinearSystem& system, const SolverSpec& spec,
                std::optional<std::span<const double>> ground_truth = std::nullopt,
                const StepObserver& observer = {});

}  // namespace sskm
