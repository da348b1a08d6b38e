#include "sskm/solver.hpp"

#include <cmath>
#include <string>

#include "sskm/diagnostics.hpp"
#include "sskm/errors.hpp"

namespace sskm {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::RK: return "rk";
    case Method::SRK: return "srk";
    case Method::SSKM: return "sskm";
  }
  return "?";
}

void SolverSpec::validate() const {
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be nonnegative");
  if (method == Method::RK && lambda != 0.0) throw ConfigError("RK requires lambda = 0");
  if (method == Method::SSKM && sampler.rule != SelectionRule::SKMGreedy)
    throw ConfigError("SSKM requires the SKM selection rule");
  if (method != Method::SSKM && sampler.rule == SelectionRule::SKMGreedy)
    throw ConfigError(std::string(to_string(method)) + " does not use the SKM selection rule");
  if (stop.max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (!(stop.epsilon >= 0.0)) throw ConfigError("epsilon must be nonnegative");
  if (stop.check_every < 1) throw ConfigError("check_every must be at least 1");
}

SolverSpec SolverSpec::rk(std::uint64_t seed) {
  SolverSpec s;
  s.method = Method::RK;
  s.lambda = 0.0;
  s.step_mode = StepMode::Inexact;
  s.sampler = SamplerConfig{SelectionRule::UniformRandom, BetaSchedule::constant(1), seed};
  return s;
}

SolverSpec SolverSpec::srk(double lambda, StepMode mode, std::uint64_t seed) {
  SolverSpec s;
  s.method = Method::SRK;
  s.lambda = lambda;
  s.step_mode = mode;
  s.sampler = SamplerConfig{SelectionRule::UniformRandom, BetaSchedule::constant(1), seed};
  return s;
}

SolverSpec SolverSpec::sskm(double lambda, std::size_t beta, StepMode mode, std::uint64_t seed) {
  SolverSpec s;
  s.method = Method::SSKM;
  s.lambda = lambda;
  s.step_mode = mode;
  s.sampler = SamplerConfig{SelectionRule::SKMGreedy, BetaSchedule::constant(beta), seed};
  return s;
}

DualPair init_state(std::size_t n, double lambda) { return DualPair::zero(n, lambda); }

DualPair step_once(const DualPair& state, const LinearSystem& system, const Selection& selection,
                   StepMode mode) {
  if (selection.chosen >= system.rows())
    throw IndexOutOfRange("selected row " + std::to_string(selection.chosen) + " out of range");
  return project_hyperplane(state, system.row(selection.chosen), system.rhs(selection.chosen), mode);
}

SolveResult run(const LinearSystem& system, const SolverSpec& spec,
                std::optional<std::span<const double>> ground_truth, const StepObserver& observer) {
  spec.validate();
  const std::size_t n = system.cols();
  if (ground_truth && ground_truth->size() != n)
    throw DimensionMismatch("ground truth length does not match column count");

  RowSelector selector(spec.sampler, system.rows());
  DualPair state = init_state(n, spec.lambda);
  IterationTrace trace;

  const bool use_mse = ground_truth.has_value() && spec.stop.mse_target.has_value();
  const double eps2 = spec.stop.epsilon * spec.stop.epsilon;

  if (!use_mse && system.residual_squared_norm(state.primal()) <= eps2) {
    trace.status = RunStatus::Converged;
    return SolveResult{std::move(state), std::move(trace)};
  }

  std::optional<DualPair> before;
  for (std::size_t k = 0; k < spec.stop.max_iters; ++k) {
    const Selection sel = selector.next(k, system, state.primal());
    const auto row = system.row(sel.chosen);
    const double t = spec.step_mode == StepMode::Inexact
                         ? sel.residual
                         : exact_step(state.dual(), row, system.rhs(sel.chosen), spec.lambda);
    if (!std::isfinite(t))
      throw NonFiniteIterate("non-finite step at iteration " + std::to_string(k));
    if (observer) before = state;
    state.shift_dual(t, row);
    for (double v : state.dual())
      if (!std::isfinite(v))
        throw NonFiniteIterate("non-finite iterate at iteration " + std::to_string(k));
    trace.iterations = k + 1;
    if (observer) observer(StepEvent{k, sel, t, *before, state});

    std::optional<double> current_mse;
    if (use_mse) current_mse = mse(state.primal(), *ground_truth);

    auto record = [&] {
      IterationRecord rec{k, sel.chosen, t, system.residual_squared_norm(state.primal()),
                          current_mse, std::nullopt};
      if (ground_truth) {
        if (!rec.mse) rec.mse = mse(state.primal(), *ground_truth);
        rec.bregman_to_truth = bregman_distance(state, *ground_truth);
      }
      trace.records.push_back(rec);
    };
    const bool traced = spec.trace_every > 0 &&
                        ((k + 1) % spec.trace_every == 0 || k + 1 == spec.stop.max_iters);
    if (traced) record();

    bool done = false;
    if (use_mse) {
      done = *current_mse < *spec.stop.mse_target;
    } else if ((k + 1) % spec.stop.check_every == 0) {
      done = system.residual_squared_norm(state.primal()) <= eps2;
    }
    if (done) {
      trace.status = RunStatus::Converged;
      if (spec.trace_every > 0 && !traced) record();
      break;
    }
  }
  return SolveResult{std::move(state), std::move(trace)};
}

}  // namespace sskm
