#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sskm/config.hpp"
#include "sskm/errors.hpp"
#include "sskm/experiment.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> out;
  std::optional<std::string> method;
  std::optional<std::string> step;
  std::optional<double> lambda;
  std::optional<std::string> beta;
  std::optional<double> noise;
  std::vector<std::string> matrices;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--trials", o.trials, "trials per cell");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--method", o.method, "rk | srk | sskm");
  cmd->add_option("--step", o.step, "exact | inexact");
  cmd->add_option("--lambda", o.lambda, "regularization weight");
  cmd->add_option("--beta", o.beta, "subset size: integer, m, m/2 or m/4");
  cmd->add_option("--noise", o.noise, "relative noise level");
}

sskm::ExperimentConfig build_config(const Overrides& o, sskm::ExperimentConfig base) {
  sskm::ExperimentConfig cfg = o.config.empty() ? base : sskm::load_config(o.config, base);
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  if (o.out) cfg.out = *o.out;
  if (o.method) cfg.methods = {sskm::parse_method(*o.method)};
  if (o.step) cfg.steps = {sskm::parse_step_mode(*o.step)};
  if (o.lambda) cfg.lambda = *o.lambda;
  if (o.beta) cfg.beta = sskm::BetaSpec::parse(*o.beta);
  if (o.noise) cfg.noise = *o.noise;
  for (const auto& m : o.matrices) cfg.matrices.push_back(m);
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse sampling Kaczmarz-Motzkin experiment harness"};
  app.require_subcommand(1);
  Overrides o;

  auto* solve = app.add_subcommand("solve", "single solve on a Gaussian instance");
  auto* lambda = app.add_subcommand("sweep-lambda", "best lambda per (m, k) cell");
  auto* beta = app.add_subcommand("sweep-beta", "MSE across subset sizes");
  auto* compare = app.add_subcommand("compare", "MSE grids and traces per method");
  auto* real = app.add_subcommand("real", "RK/SRK/SSKM on MatrixMarket files");
  for (auto* cmd : {solve, lambda, beta, compare, real}) add_common(cmd, o);
  real->add_option("matrices", o.matrices, "MatrixMarket files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    sskm::ExperimentConfig base;
    if (real->parsed()) base.k = 20;
    sskm::ExperimentConfig cfg = build_config(o, base);
    // On a sweep an explicit value pins the swept parameter.
    if (lambda->parsed() && o.lambda) cfg.lambda_values = {*o.lambda};
    if (beta->parsed() && o.beta) cfg.beta_values = {cfg.beta};

    sskm::ExperimentReport report;
    if (solve->parsed()) {
      report = sskm::solve_single(cfg);
    } else if (lambda->parsed()) {
      report = sskm::sweep_lambda(cfg);
    } else if (beta->parsed()) {
      report = sskm::sweep_beta(cfg);
    } else if (compare->parsed()) {
      report = sskm::compare_methods(cfg);
    } else {
      if (cfg.matrices.empty()) throw sskm::ConfigError("real: no MatrixMarket files given");
      std::vector<std::filesystem::path> paths(cfg.matrices.begin(), cfg.matrices.end());
      report = sskm::real_matrix_bench(paths, cfg);
    }

    for (const auto& f : report.files) std::cout << f.string() << '\n';
    for (const auto& e : report.errors) std::cerr << "error: " << e << '\n';
    return report.errors.empty() ? 0 : 3;
  } catch (const sskm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const sskm::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  }
}
