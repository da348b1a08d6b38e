#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "sskm/linear_system.hpp"
#include "sskm/rng.hpp"

namespace sskm {

enum class SelectionRule { Cyclic, UniformRandom, SKMGreedy };

std::string_view to_string(SelectionRule rule);

// Subset size as a function of the iteration counter.
class BetaSchedule {
 public:
  BetaSchedule() : BetaSchedule(constant(1)) {}
  explicit BetaSchedule(std::function<std::size_t(std::size_t)> fn) : fn_(std::move(fn)) {}
  static BetaSchedule constant(std::size_t beta);

  std::size_t at(std::size_t k) const { return fn_(k); }

 private:
  std::function<std::size_t(std::size_t)> fn_;
};

struct SamplerConfig {
  SelectionRule rule = SelectionRule::SKMGreedy;
  BetaSchedule beta;
  std::uint64_t seed = 0;
};

struct Selection {
  std::vector<std::size_t> subset;  // sorted
  std::size_t chosen = 0;
  double residual = 0.0;            // <a_chosen, x> - b_chosen
};

// Uniform size-beta subset of {0, ..., m-1} without replacement, sorted.
// Throws InvalidBeta unless 1 <= beta <= m.
std::vector<std::size_t> sample_subset(std::size_t m, std::size_t beta, Rng& rng);

// Partial Fisher-Yates over a persistent index buffer: O(m) setup, O(beta)
// per draw. Each draw is an exactly uniform subset regardless of history.
class SubsetSampler {
 public:
  explicit SubsetSampler(std::size_t m);

  // Unsorted view into the internal buffer, valid until the next draw.
  std::span<const std::size_t> draw(std::size_t beta, Rng& rng);
  std::size_t size() const noexcept { return buffer_.size(); }

 private:
  std::vector<std::size_t> buffer_;
};

// Index in subset with the largest squared residual, smallest index on ties.
// Throws EmptySubset or IndexOutOfRange.
Selection select_motzkin(std::vector<std::size_t> subset, std::span<const double> residuals);

// Probability the norm-weighted greedy subset law assigns to tau, by
// exhaustive enumeration of all C(m, beta) subsets. Row norms are the
// system's original (pre-normalization) norms. Throws TooManySubsets when
// C(m, beta) exceeds 100000.
double theoretical_subset_probability(const LinearSystem& system, std::span<const double> x,
                                      std::size_t beta, std::span<const std::size_t> tau);

// Stateful row selector for one solver run. Owns its RNG and sampling buffer.
class RowSelector {
 public:
  RowSelector(SamplerConfig config, std::size_t m);

  Selection next(std::size_t k, const LinearSystem& system, std::span<const double> x);

  const SamplerConfig& config() const noexcept { return config_; }

 private:
  SamplerConfig config_;
  Rng rng_;
  SubsetSampler sampler_;
};

// One-shot selection with a caller-owned RNG.
Selection next_index(const SamplerConfig& config, std::size_t k, const LinearSystem& system,
                     std::span<const double> x, Rng& rng);

}  // namespace sskm
