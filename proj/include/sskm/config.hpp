#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sskm/bregman.hpp"
#include "sskm/solver.hpp"

namespace sskm {

// Subset size either as an absolute count or as m / divisor.
class BetaSpec {
 public:
  static BetaSpec absolute(std::size_t beta);
  static BetaSpec fraction(std::size_t divisor);
  // Accepts "m", "m/<d>" or a positive integer. Throws ConfigError.
  static BetaSpec parse(std::string_view text);

  // At least 1 and at most m.
  std::size_t resolve(std::size_t m) const;
  std::string to_string() const;

  bool operator==(const BetaSpec&) const = default;

 private:
  std::size_t value_ = 2;
  bool relative_ = true;
};

Method parse_method(std::string_view text);
StepMode parse_step_mode(std::string_view text);

struct ExperimentConfig {
  std::size_t m = 300;
  std::size_t n = 200;
  std::size_t k = 5;  // sparsity of x_hat
  double lambda = 1.0;
  BetaSpec beta = BetaSpec::fraction(2);
  std::vector<StepMode> steps{StepMode::Exact, StepMode::Inexact};
  std::vector<Method> methods{Method::SRK, Method::SSKM};
  double noise = 0.0;  // relative 2-norm noise level
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double mse_target = 1e-6;
  std::size_t max_iters = 200000;
  std::size_t trace_every = 1000;  // 0 disables trace output
  std::string out = "out";

  // Sweep grids.
  std::vector<std::size_t> m_values{140, 160, 180, 200, 220, 240, 260, 280, 300};
  std::vector<std::size_t> k_values{5, 10, 15, 20, 25, 30};
  std::vector<double> lambda_values{0.01, 0.1, 1.0, 5.0, 10.0};
  std::vector<BetaSpec> beta_values{BetaSpec::absolute(1), BetaSpec::fraction(4),
                                    BetaSpec::fraction(2), BetaSpec::fraction(1)};

  std::vector<std::string> matrices;  // MatrixMarket inputs for the real-data bench

  // Throws ConfigError.
  void validate() const;
};

// Flat JSON object whose keys mirror ExperimentConfig fields. Unknown keys,
// nested objects and ill-typed values are ConfigErrors.
ExperimentConfig parse_config(std::string_view json_text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

}  // namespace sskm
