#include "sskm/sampling.hpp"

#include <algorithm>
#include <string>

#include "sskm/errors.hpp"

namespace sskm {

namespace {

constexpr double kMaxEnumeratedSubsets = 100000.0;

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

// Advance a sorted k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(SelectionRule rule) {
  switch (rule) {
    case SelectionRule::Cyclic: return "cyclic";
    case SelectionRule::UniformRandom: return "uniform";
    case SelectionRule::SKMGreedy: return "skm";
  }
  return "?";
}

BetaSchedule BetaSchedule::constant(std::size_t beta) {
  return BetaSchedule([beta](std::size_t) { return beta; });
}

SubsetSampler::SubsetSampler(std::size_t m) : buffer_(m) {
  for (std::size_t i = 0; i < m; ++i) buffer_[i] = i;
}

std::span<const std::size_t> SubsetSampler::draw(std::size_t beta, Rng& rng) {
  const std::size_t m = buffer_.size();
  check_beta(beta, m);
  for (std::size_t i = 0; i < beta; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, m - 1);
    std::swap(buffer_[i], buffer_[pick(rng)]);
  }
  return {buffer_.data(), beta};
}

std::vector<std::size_t> sample_subset(std::size_t m, std::size_t beta, Rng& rng) {
  check_beta(beta, m);
  SubsetSampler sampler(m);
  auto drawn = sampler.draw(beta, rng);
  std::vector<std::size_t> out(drawn.begin(), drawn.end());
  std::sort(out.begin(), out.end());
  return out;
}

Selection select_motzkin(std::vector<std::size_t> subset, std::span<const double> residuals) {
  if (subset.empty()) throw EmptySubset();
  std::sort(subset.begin(), subset.end());
  std::size_t best = subset.front();
  double best_sq = -1.0;
  for (std::size_t i : subset) {
    if (i >= residuals.size())
      throw IndexOutOfRange("subset index " + std::to_string(i) + " out of range");
    const double sq = residuals[i] * residuals[i];
    if (sq > best_sq) {
      best_sq = sq;
      best = i;
    }
  }
  return Selection{std::move(subset), best, residuals[best]};
}

double theoretical_subset_probability(const LinearSystem& system, std::span<const double> x,
                                      std::size_t beta, std::span<const std::size_t> tau) {
  const std::size_t m = system.rows();
  check_beta(beta, m);
  if (binomial(m, beta) > kMaxEnumeratedSubsets)
    throw TooManySubsets("C(" + std::to_string(m) + ", " + std::to_string(beta) +
                         ") exceeds the enumeration bound");
  if (tau.size() != beta) throw InvalidBeta(tau.size(), m);

  const auto scales = system.row_scales();
  std::vector<double> raw_sq(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = scales[i] * system.row_residual(i, x);
    raw_sq[i] = r * r;
  }
  auto weight = [&](std::span<const std::size_t> subset) {
    std::size_t best = subset.front();
    for (std::size_t i : subset)
      if (raw_sq[i] > raw_sq[best] || (raw_sq[i] == raw_sq[best] && i < best)) best = i;
    return scales[best] * scales[best];
  };

  std::vector<std::size_t> target(tau.begin(), tau.end());
  std::sort(target.begin(), target.end());
  if (std::adjacent_find(target.begin(), target.end()) != target.end() || target.back() >= m)
    throw IndexOutOfRange("tau is not a valid subset");

  std::vector<std::size_t> c(beta);
  for (std::size_t i = 0; i < beta; ++i) c[i] = i;
  double total = 0.0;
  do {
    total += weight(c);
  } while (next_combination(c, m));
  return weight(target) / total;
}

RowSelector::RowSelector(SamplerConfig config, std::size_t m)
    : config_(std::move(config)), rng_(make_rng(config_.seed)), sampler_(m) {}

Selection RowSelector::next(std::size_t k, const LinearSystem& system, std::span<const double> x) {
  const std::size_t m = system.rows();
  switch (config_.rule) {
    case SelectionRule::Cyclic: {
      const std::size_t i = k % m;
      return Selection{{i}, i, system.row_residual(i, x)};
    }
    case SelectionRule::UniformRandom: {
      std::uniform_int_distribution<std::size_t> pick(0, m - 1);
      const std::size_t i = pick(rng_);
      return Selection{{i}, i, system.row_residual(i, x)};
    }
    case SelectionRule::SKMGreedy: {
      const auto drawn = sampler_.draw(config_.beta.at(k), rng_);
      Selection s{std::vector<std::size_t>(drawn.begin(), drawn.end()), 0, 0.0};
      std::sort(s.subset.begin(), s.subset.end());
      double best_sq = -1.0;
      for (std::size_t i : s.subset) {
        const double r = system.row_residual(i, x);
        if (r * r > best_sq) {
          best_sq = r * r;
          s.chosen = i;
          s.residual = r;
        }
      }
      return s;
    }
  }
  throw ConfigError("unknown selection rule");
}

Selection next_index(const SamplerConfig& config, std::size_t k, const LinearSystem& system,
                     std::span<const double> x, Rng& rng) {
  const std::size_t m = system.rows();
  switch (config.rule) {
    case SelectionRule::Cyclic: {
      const std::size_t i = k % m;
      return Selection{{i}, i, system.row_residual(i, x)};
    }
    case SelectionRule::UniformRandom: {
      std::uniform_int_distribution<std::size_t> pick(0, m - 1);
      const std::size_t i = pick(rng);
      return Selection{{i}, i, system.row_residual(i, x)};
    }
    case SelectionRule::SKMGreedy: {
      const auto subset = sample_subset(m, config.beta.at(k), rng);
      std::vector<double> residuals(m, 0.0);
      for (std::size_t i : subset) residuals[i] = system.row_residual(i, x);
      return select_motzkin(subset, residuals);
    }
  }
  throw ConfigError("unknown selection rule");
}

}  // namespace sskm
