#include "sskm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <exception>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "sskm/csv.hpp"
#include "sskm/diagnostics.hpp"
#include "sskm/errors.hpp"
#include "sskm/matrix_market.hpp"
#include "sskm/sampling.hpp"

namespace sskm {

namespace {

enum Stream : std::uint64_t { kInstanceStream = 0, kNoiseStream = 1, kSolverStream = 2 };

const std::vector<std::string> kGridHeader{"experiment_id", "method", "step", "m",    "n",    "k",
                                           "lambda",        "beta",   "noise", "stat", "value"};
const std::vector<std::string> kTraceHeader{"experiment_id", "trial", "k_iter", "mse",
                                            "residual2",     "bregman", "i_k",  "t_k"};

double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

std::uint64_t cell_seed(const ExperimentConfig& cfg, std::size_t m, std::size_t k,
                        std::size_t trial, Stream stream) {
  return derive_seed(cfg.seed, {m, cfg.n, k, trial, stream});
}

SolverSpec make_spec(const ExperimentConfig& cfg, Method method, StepMode step, double lambda,
                     std::size_t beta, std::uint64_t seed, std::size_t trace_every) {
  SolverSpec spec;
  switch (method) {
    case Method::RK: spec = SolverSpec::rk(seed); break;
    case Method::SRK: spec = SolverSpec::srk(lambda, step, seed); break;
    case Method::SSKM: spec = SolverSpec::sskm(lambda, beta, step, seed); break;
  }
  spec.stop.epsilon = 0.0;
  spec.stop.max_iters = cfg.max_iters;
  spec.stop.mse_target = cfg.mse_target;
  spec.trace_every = trace_every;
  return spec;
}

// Instance for (cell, trial) with noise applied to the normalized rhs.
struct TrialProblem {
  Instance instance;
  LinearSystem solved;
};

TrialProblem make_problem(const ExperimentConfig& cfg, std::size_t m, std::size_t k,
                          std::size_t trial) {
  Rng rng = make_rng(cell_seed(cfg, m, k, trial, kInstanceStream));
  Instance inst = gaussian_instance(m, cfg.n, k, rng);
  if (cfg.noise > 0.0) {
    Rng noise_rng = make_rng(cell_seed(cfg, m, k, trial, kNoiseStream));
    NoisyRhs noisy = add_noise(inst.system.rhs(), cfg.noise, noise_rng);
    LinearSystem solved = inst.system.with_rhs(std::move(noisy.b_delta));
    return TrialProblem{std::move(inst), std::move(solved)};
  }
  LinearSystem solved = inst.system;
  return TrialProblem{std::move(inst), std::move(solved)};
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::vector<std::pair<Method, StepMode>> combos(const ExperimentConfig& cfg) {
  std::vector<std::pair<Method, StepMode>> out;
  for (Method method : cfg.methods) {
    if (method == Method::RK) {
      out.emplace_back(Method::RK, StepMode::Inexact);
      continue;
    }
    for (StepMode step : cfg.steps) out.emplace_back(method, step);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::filesystem::path prepare_out(const ExperimentConfig& cfg) {
  const std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_grid(const std::filesystem::path& path, const std::vector<GridRow>& rows) {
  CsvWriter csv(path, kGridHeader);
  for (const auto& r : rows)
    csv.row({r.experiment_id, r.method, r.step, r.m, r.n, r.k, r.lambda, r.beta, r.noise, r.stat,
             r.value});
}

void write_trace(CsvWriter& csv, const std::string& id, std::size_t trial,
                 const IterationTrace& trace) {
  for (const auto& rec : trace.records)
    csv.row({id, trial, rec.k + 1, rec.mse.value_or(std::nan("")), rec.residual2,
             rec.bregman_to_truth.value_or(std::nan("")), rec.index, rec.step});
}

// MSE quantile bands on the k_iter = every, 2*every, ... grid; a trial that
// stopped early contributes its final value.
std::vector<TraceBand> trace_bands(const std::string& id, const std::vector<TrialResult>& trials,
                                   std::size_t every) {
  std::vector<TraceBand> out;
  if (every == 0 || trials.empty()) return out;
  std::size_t longest = 0;
  for (const auto& t : trials) longest = std::max(longest, t.iterations);
  for (std::size_t it = every; it < longest + every; it += every) {
    const std::size_t at = std::min(it, longest);
    std::vector<double> values;
    for (const auto& t : trials) {
      if (t.trace.records.empty()) continue;
      double v = t.trace.records.back().mse.value_or(std::nan(""));
      for (const auto& rec : t.trace.records) {
        if (rec.k + 1 == at) {
          v = rec.mse.value_or(std::nan(""));
          break;
        }
      }
      values.push_back(v);
    }
    if (values.empty()) break;
    TraceBand b;
    b.experiment_id = id;
    b.k_iter = at;
    b.median = quantile(values, 0.5);
    b.q25 = quantile(values, 0.25);
    b.q75 = quantile(values, 0.75);
    b.min = *std::min_element(values.begin(), values.end());
    b.max = *std::max_element(values.begin(), values.end());
    out.push_back(b);
    if (at == longest) break;
  }
  return out;
}

}  // namespace

Instance gaussian_instance(std::size_t m, std::size_t n, std::size_t k, Rng& rng) {
  if (k < 1 || k > n) throw InvalidSparsity("sparsity k=" + std::to_string(k) + " outside [1, " +
                                            std::to_string(n) + "]");
  if (m < 1) throw ConfigError("m must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix raw(m, n);
  for (double& v : raw.values) v = normal(rng);
  return planted_instance(raw, k, rng);
}

Instance planted_instance(const DenseMatrix& raw, std::size_t k, Rng& rng) {
  if (k < 1 || k > raw.cols)
    throw InvalidSparsity("sparsity k=" + std::to_string(k) + " outside [1, " +
                          std::to_string(raw.cols) + "]");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x_hat(raw.cols, 0.0);
  for (std::size_t j : sample_subset(raw.cols, k, rng)) {
    double v = 0.0;
    while (v == 0.0) v = normal(rng);
    x_hat[j] = v;
  }
  std::vector<double> b = raw.multiply(x_hat);
  LinearSystem system = LinearSystem::normalize_rows(raw, b);
  return Instance{raw, std::move(system), std::move(x_hat), std::move(b)};
}

ZeroRowFilter drop_zero_rows(const DenseMatrix& raw) {
  ZeroRowFilter out;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < raw.rows; ++i) {
    if (std::sqrt(dot(raw.row(i), raw.row(i))) < 1e-14)
      out.dropped.push_back(i);
    else
      kept.push_back(i);
  }
  out.matrix = DenseMatrix(kept.size(), raw.cols);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const auto src = raw.row(kept[r]);
    std::copy(src.begin(), src.end(), out.matrix.row(r).begin());
  }
  return out;
}

NoisyRhs add_noise(std::span<const double> b, double level, Rng& rng) {
  if (!(level >= 0.0)) throw ConfigError("noise level must be nonnegative");
  NoisyRhs out{std::vector<double>(b.begin(), b.end()), 0.0, 0.0};
  if (level == 0.0 || b.empty()) return out;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> e(b.size());
  double e_norm = 0.0;
  double b_norm = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    e[i] = normal(rng);
    e_norm += e[i] * e[i];
    b_norm += b[i] * b[i];
  }
  e_norm = std::sqrt(e_norm);
  b_norm = std::sqrt(b_norm);
  const double scale = e_norm > 0.0 ? level * b_norm / e_norm : 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    e[i] *= scale;
    out.b_delta[i] = b[i] + e[i];
    d2 += e[i] * e[i];
    out.delta_inf = std::max(out.delta_inf, std::abs(e[i]));
  }
  out.delta_2 = std::sqrt(d2);
  return out;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

TrialResult run_trial(const LinearSystem& system, std::span<const double> x_hat,
                      const SolverSpec& spec, std::size_t trial) {
  const double start = thread_cpu_seconds();
  SolveResult res = run(system, spec, x_hat);
  const double elapsed = thread_cpu_seconds() - start;
  TrialResult out;
  out.trial = trial;
  out.seed = spec.sampler.seed;
  out.final_mse = mse(res.state.primal(), x_hat);
  out.iterations = res.trace.iterations;
  out.cpu_seconds = elapsed;
  out.converged = res.trace.status == RunStatus::Converged;
  out.trace = std::move(res.trace);
  return out;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

ExperimentReport solve_single(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto dir = prepare_out(cfg);
  const Method method = cfg.methods.front();
  const StepMode step = method == Method::RK ? StepMode::Inexact : cfg.steps.front();
  const double lambda = method == Method::RK ? 0.0 : cfg.lambda;
  const std::size_t beta = cfg.beta.resolve(cfg.m);

  TrialProblem p = make_problem(cfg, cfg.m, cfg.k, 0);
  const SolverSpec spec = make_spec(cfg, method, step, lambda, beta,
                                    cell_seed(cfg, cfg.m, cfg.k, 0, kSolverStream),
                                    std::max<std::size_t>(cfg.trace_every, 1));
  TrialResult r = run_trial(p.solved, p.instance.x_hat, spec, 0);

  const std::string id = "solve/" + std::string(to_string(method)) + "/" +
                         std::string(to_string(step));
  ExperimentReport report;
  {
    CsvWriter csv(dir / "trace.csv", kTraceHeader);
    write_trace(csv, id, 0, r.trace);
  }
  const std::string beta_label = std::to_string(beta);
  auto add = [&](const std::string& stat, double v) {
    report.grid.push_back(GridRow{id, std::string(to_string(method)), std::string(to_string(step)),
                                  cfg.m, cfg.n, cfg.k, lambda, beta_label, cfg.noise, stat, v});
  };
  add("final_mse", r.final_mse);
  add("iterations", static_cast<double>(r.iterations));
  add("converged", r.converged ? 1.0 : 0.0);
  write_grid(dir / "summary.csv", report.grid);
  report.files = {dir / "trace.csv", dir / "summary.csv"};
  return report;
}

ExperimentReport sweep_lambda(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto dir = prepare_out(cfg);
  const StepMode step = cfg.steps.front();
  const std::size_t cells = cfg.m_values.size() * cfg.k_values.size();
  const std::size_t lambdas = cfg.lambda_values.size();
  // mse[(cell * lambdas + l) * trials + t]
  std::vector<double> mse_table(cells * lambdas * cfg.trials, 0.0);

  parallel_for(cells * cfg.trials, [&](std::size_t job) {
    const std::size_t cell = job / cfg.trials;
    const std::size_t trial = job % cfg.trials;
    const std::size_t m = cfg.m_values[cell / cfg.k_values.size()];
    const std::size_t k = cfg.k_values[cell % cfg.k_values.size()];
    TrialProblem p = make_problem(cfg, m, k, trial);
    const std::uint64_t seed = cell_seed(cfg, m, k, trial, kSolverStream);
    for (std::size_t l = 0; l < lambdas; ++l) {
      const SolverSpec spec = make_spec(cfg, Method::SSKM, step, cfg.lambda_values[l],
                                        cfg.beta.resolve(m), seed, 0);
      mse_table[(cell * lambdas + l) * cfg.trials + trial] =
          run_trial(p.solved, p.instance.x_hat, spec, trial).final_mse;
    }
  });

  ExperimentReport report;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t m = cfg.m_values[cell / cfg.k_values.size()];
    const std::size_t k = cfg.k_values[cell % cfg.k_values.size()];
    const std::string beta = std::to_string(cfg.beta.resolve(m));
    std::size_t best = 0;
    std::vector<double> means(lambdas);
    for (std::size_t l = 0; l < lambdas; ++l) {
      const auto first = mse_table.begin() + static_cast<std::ptrdiff_t>((cell * lambdas + l) * cfg.trials);
      means[l] = mean(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(cfg.trials)));
      if (means[l] < means[best]) best = l;
      report.grid.push_back(GridRow{"sweep-lambda", "sskm", std::string(to_string(step)), m, cfg.n,
                                    k, cfg.lambda_values[l], beta, cfg.noise, "mean_mse", means[l]});
    }
    report.grid.push_back(GridRow{"sweep-lambda", "sskm", std::string(to_string(step)), m, cfg.n, k,
                                  cfg.lambda_values[best], beta, cfg.noise, "best_lambda",
                                  cfg.lambda_values[best]});
  }
  write_grid(dir / "lambda_grid.csv", report.grid);
  report.files = {dir / "lambda_grid.csv"};
  return report;
}

ExperimentReport sweep_beta(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto dir = prepare_out(cfg);
  const std::size_t steps = cfg.steps.size();
  const std::size_t betas = cfg.beta_values.size();
  std::vector<double> mse_table(steps * betas * cfg.trials, 0.0);

  parallel_for(cfg.trials, [&](std::size_t trial) {
    TrialProblem p = make_problem(cfg, cfg.m, cfg.k, trial);
    const std::uint64_t seed = cell_seed(cfg, cfg.m, cfg.k, trial, kSolverStream);
    for (std::size_t s = 0; s < steps; ++s) {
      for (std::size_t b = 0; b < betas; ++b) {
        const SolverSpec spec = make_spec(cfg, Method::SSKM, cfg.steps[s], cfg.lambda,
                                          cfg.beta_values[b].resolve(cfg.m), seed, 0);
        mse_table[(s * betas + b) * cfg.trials + trial] =
            run_trial(p.solved, p.instance.x_hat, spec, trial).final_mse;
      }
    }
  });

  ExperimentReport report;
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t b = 0; b < betas; ++b) {
      const auto first = mse_table.begin() + static_cast<std::ptrdiff_t>((s * betas + b) * cfg.trials);
      const std::vector<double> v(first, first + static_cast<std::ptrdiff_t>(cfg.trials));
      const std::string beta = std::to_string(cfg.beta_values[b].resolve(cfg.m));
      const std::string step(to_string(cfg.steps[s]));
      for (auto [stat, value] : {std::pair{"mean_mse", mean(v)}, std::pair{"std_mse", sample_std(v)},
                                 std::pair{"median_mse", quantile(v, 0.5)}})
        report.grid.push_back(GridRow{"sweep-beta", "sskm", step, cfg.m, cfg.n, cfg.k, cfg.lambda,
                                      beta, cfg.noise, stat, value});
    }
  }
  write_grid(dir / "beta_grid.csv", report.grid);
  report.files = {dir / "beta_grid.csv"};
  return report;
}

ExperimentReport compare_methods(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto dir = prepare_out(cfg);
  const auto runs = combos(cfg);
  const std::size_t cells = cfg.m_values.size() * cfg.k_values.size();
  // results[(cell * runs + r) * trials + t]
  std::vector<TrialResult> results(cells * runs.size() * cfg.trials);

  parallel_for(cells * cfg.trials, [&](std::size_t job) {
    const std::size_t cell = job / cfg.trials;
    const std::size_t trial = job % cfg.trials;
    const std::size_t m = cfg.m_values[cell / cfg.k_values.size()];
    const std::size_t k = cfg.k_values[cell % cfg.k_values.size()];
    TrialProblem p = make_problem(cfg, m, k, trial);
    const std::uint64_t seed = cell_seed(cfg, m, k, trial, kSolverStream);
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto [method, step] = runs[r];
      const double lambda = method == Method::RK ? 0.0 : cfg.lambda;
      const SolverSpec spec =
          make_spec(cfg, method, step, lambda, cfg.beta.resolve(m), seed, cfg.trace_every);
      results[(cell * runs.size() + r) * cfg.trials + trial] =
          run_trial(p.solved, p.instance.x_hat, spec, trial);
    }
  });

  ExperimentReport report;
  CsvWriter trials_csv(dir / "trials.csv",
                       {"experiment_id", "trial", "seed", "final_mse", "iterations", "converged"});
  std::optional<CsvWriter> traces_csv;
  if (cfg.trace_every > 0) traces_csv.emplace(dir / "traces.csv", kTraceHeader);

  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t m = cfg.m_values[cell / cfg.k_values.size()];
    const std::size_t k = cfg.k_values[cell % cfg.k_values.size()];
    const std::string beta = std::to_string(cfg.beta.resolve(m));
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto [method, step] = runs[r];
      const std::string method_name(to_string(method));
      const std::string step_name(to_string(step));
      const std::string id = "compare/" + method_name + "/" + step_name + "/m=" + std::to_string(m) +
                             "/k=" + std::to_string(k);
      const auto first = results.begin() + static_cast<std::ptrdiff_t>((cell * runs.size() + r) * cfg.trials);
      const std::vector<TrialResult> trials(first, first + static_cast<std::ptrdiff_t>(cfg.trials));

      std::vector<double> mses;
      std::vector<double> iters;
      double converged = 0.0;
      for (const auto& t : trials) {
        mses.push_back(t.final_mse);
        iters.push_back(static_cast<double>(t.iterations));
        if (t.converged) converged += 1.0;
        trials_csv.row({id, t.trial, static_cast<std::size_t>(t.seed), t.final_mse, t.iterations,
                        t.converged ? "1" : "0"});
        if (traces_csv) write_trace(*traces_csv, id, t.trial, t.trace);
      }
      const double lambda = method == Method::RK ? 0.0 : cfg.lambda;
      for (auto [stat, value] :
           {std::pair{"mean_mse", mean(mses)}, std::pair{"median_mse", quantile(mses, 0.5)},
            std::pair{"q25_mse", quantile(mses, 0.25)}, std::pair{"q75_mse", quantile(mses, 0.75)},
            std::pair{"mean_iters", mean(iters)},
            std::pair{"converged_fraction", converged / static_cast<double>(trials.size())}})
        report.grid.push_back(GridRow{id, method_name, step_name, m, cfg.n, k, lambda, beta,
                                      cfg.noise, stat, value});
      auto bands = trace_bands(id, trials, cfg.trace_every);
      report.bands.insert(report.bands.end(), bands.begin(), bands.end());
    }
  }
  write_grid(dir / "mse_grid.csv", report.grid);
  report.files = {dir / "mse_grid.csv", dir / "trials.csv"};
  if (cfg.trace_every > 0) {
    CsvWriter bands(dir / "trace_bands.csv",
                    {"experiment_id", "k_iter", "median", "q25", "q75", "min", "max"});
    for (const auto& b : report.bands) bands.row({b.experiment_id, b.k_iter, b.median, b.q25, b.q75, b.min, b.max});
    report.files.push_back(dir / "traces.csv");
    report.files.push_back(dir / "trace_bands.csv");
  }
  return report;
}

ExperimentReport real_matrix_bench(const std::vector<std::filesystem::path>& paths,
                                   const ExperimentConfig& cfg) {
  cfg.validate();
  const auto dir = prepare_out(cfg);
  const StepMode step = cfg.steps.front();
  const std::vector<Method> methods{Method::RK, Method::SRK, Method::SSKM};
  ExperimentReport report;

  for (const auto& path : paths) {
    const std::string name = path.stem().string();
    try {
      const DenseMatrix raw = read_matrix_market(path);
      ZeroRowFilter filtered = drop_zero_rows(raw);
      if (filtered.matrix.rows == 0) throw DataError("every row is zero");
      const DenseMatrix& a = filtered.matrix;
      const SingularValueSummary sv = singular_values(a);
      const std::size_t k = std::min(cfg.k, a.cols);
      const std::size_t beta = cfg.beta.resolve(a.rows);

      std::vector<TrialResult> results(methods.size() * cfg.trials);
      parallel_for(cfg.trials, [&](std::size_t trial) {
        Rng rng = make_rng(derive_seed(cfg.seed, {a.rows, a.cols, k, trial, kInstanceStream}));
        const Instance inst = planted_instance(a, k, rng);
        const std::uint64_t seed = derive_seed(cfg.seed, {a.rows, a.cols, k, trial, kSolverStream});
        for (std::size_t r = 0; r < methods.size(); ++r) {
          const double lambda = methods[r] == Method::RK ? 0.0 : cfg.lambda;
          const StepMode mode = methods[r] == Method::RK ? StepMode::Inexact : step;
          const SolverSpec spec = make_spec(cfg, methods[r], mode, lambda, beta, seed, 0);
          results[r * cfg.trials + trial] = run_trial(inst.system, inst.x_hat, spec, trial);
        }
      });

      for (std::size_t r = 0; r < methods.size(); ++r) {
        RealBenchRow row;
        row.matrix = name;
        row.m = a.rows;
        row.n = a.cols;
        row.dropped_rows = filtered.dropped.size();
        row.density = density(raw);
        row.cond = sv.condition();
        row.sigma_min_tilde = sv.sigma_min_tilde;
        row.method = std::string(to_string(methods[r]));
        row.converged = true;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
          const auto& res = results[r * cfg.trials + t];
          row.converged = row.converged && res.converged;
          row.mean_iterations += static_cast<double>(res.iterations);
          row.mean_cpu_seconds += res.cpu_seconds;
        }
        row.mean_iterations /= static_cast<double>(cfg.trials);
        row.mean_cpu_seconds /= static_cast<double>(cfg.trials);
        report.real.push_back(row);
      }
    } catch (const DataError& e) {
      report.errors.push_back(path.string() + ": " + e.what());
    }
  }

  CsvWriter csv(dir / "real_bench.csv", {"matrix", "m", "n", "dropped_rows", "density", "cond",
                                         "sigma_min_tilde", "method", "it", "cpu"});
  for (const auto& r : report.real) {
    const CsvField it = r.converged ? CsvField(r.mean_iterations) : CsvField("--");
    const CsvField cpu = r.converged ? CsvField(r.mean_cpu_seconds) : CsvField("--");
    csv.row({r.matrix, r.m, r.n, r.dropped_rows, r.density, r.cond, r.sigma_min_tilde, r.method, it,
             cpu});
  }
  report.files = {dir / "real_bench.csv"};
  return report;
}

}  // namespace sskm
