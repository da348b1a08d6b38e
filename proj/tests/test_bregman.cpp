#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sskm/bregman.hpp"
#include "sskm/errors.hpp"
#include "sskm/linear_system.hpp"

using namespace sskm;

namespace {

std::vector<double> gaussian(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  std::vector<double> v(n);
  for (double& x : v) x = nd(rng);
  return v;
}

std::vector<double> unit(std::vector<double> v) {
  const double n = std::sqrt(dot(v, v));
  for (double& x : v) x /= n;
  return v;
}

double norm(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("soft_threshold examples") {
  const std::vector<double> v{2.5, -0.3, 1.0};
  CHECK(soft_threshold(v, 1.0) == std::vector<double>{1.5, 0.0, 0.0});
  CHECK(soft_threshold(v, 0.0) == v);
  const std::vector<double> w{-3.0, 3.0};
  CHECK(soft_threshold(w, 3.0) == std::vector<double>{0.0, 0.0});
  CHECK_THROWS_AS(soft_threshold(v, -1.0), ConfigError);
}

TEST_CASE("soft_threshold is 1-Lipschitz and shrinks the support") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lam(0.0, 2.0);
  for (int rep = 0; rep < 500; ++rep) {
    const auto u = gaussian(6, rng, 2.0);
    const auto v = gaussian(6, rng, 2.0);
    const double l = lam(rng);
    const auto su = soft_threshold(u, l);
    const auto sv = soft_threshold(v, l);
    CHECK(norm(su, sv) <= norm(u, v) + 1e-15);
    for (std::size_t j = 0; j < 6; ++j)
      if (su[j] != 0.0) CHECK(std::abs(u[j]) > l);
  }
}

TEST_CASE("objective_value examples") {
  const std::vector<double> zero(4, 0.0);
  CHECK(objective_value(zero, 3.0) == 0.0);
  const std::vector<double> x{1.0, -2.0};
  CHECK(objective_value(x, 1.0) == 5.5);
  std::mt19937_64 rng(2);
  const auto y = gaussian(5, rng);
  CHECK(objective_value(y, 0.0) == doctest::Approx(0.5 * dot(y, y)).epsilon(1e-15));
  CHECK_THROWS_AS(RegularizedObjective(-0.1), ConfigError);
}

TEST_CASE("conjugate_value examples") {
  const std::vector<double> zero(3, 0.0);
  CHECK(conjugate_value(zero, 1.0) == 0.0);
  const std::vector<double> three{3.0};
  CHECK(conjugate_value(three, 1.0) == 2.0);
  CHECK(oracle::conjugate_sup({3.0}, 1.0) == doctest::Approx(2.0).epsilon(1e-10));
  std::mt19937_64 rng(3);
  const auto y = gaussian(4, rng);
  CHECK(conjugate_value(y, 0.0) == doctest::Approx(0.5 * dot(y, y)).epsilon(1e-15));
}

TEST_CASE("conjugate_value matches the numerical sup") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> lam(0.0, 3.0);
  for (int rep = 0; rep < 100; ++rep) {
    const auto y = gaussian(static_cast<std::size_t>(dim(rng)), rng, 3.0);
    const double l = lam(rng);
    CHECK(std::abs(conjugate_value(y, l) - oracle::conjugate_sup(y, l)) <= 1e-8);
  }
}

TEST_CASE("bregman_distance examples") {
  std::mt19937_64 rng(5);
  const DualPair p(gaussian(5, rng), 0.7);
  CHECK(bregman_distance(p, p.primal()) == doctest::Approx(0.0).epsilon(1e-15));

  const DualPair e(std::vector<double>{1.0, 0.0}, 0.0);
  const std::vector<double> y{0.0, 1.0};
  CHECK(bregman_distance(e, y) == doctest::Approx(1.0).epsilon(1e-15));

  const DualPair d(std::vector<double>{2.0, 0.0}, 1.0);
  CHECK(d.primal()[0] == 1.0);
  const std::vector<double> z{0.0, 3.0};
  CHECK(bregman_distance(d, z) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(oracle::bregman({2.0, 0.0}, z, 1.0) == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("bregman_distance agrees with the longhand formula") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 200; ++rep) {
    const auto dual = gaussian(5, rng, 2.0);
    const auto y = gaussian(5, rng);
    const DualPair p(dual, 0.8);
    CHECK(bregman_distance(p, y) == doctest::Approx(oracle::bregman(dual, y, 0.8)).epsilon(1e-12));
  }
}

TEST_CASE("strong convexity sandwich") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 500; ++rep) {
    const double l = 0.5;
    const DualPair p(gaussian(6, rng, 2.0), l);
    const DualPair q(gaussian(6, rng, 2.0), l);
    const double d = bregman_distance(p, q.primal());
    const double gap = norm(p.primal(), q.primal());
    CHECK(0.5 * gap * gap <= d + 1e-12);
    CHECK(d <= norm(p.dual(), q.dual()) * gap + 1e-12);
    CHECK(bregman_distance(p, p.primal()) == doctest::Approx(0.0));
  }
}

TEST_CASE("DualPair keeps primal = S(dual)") {
  const auto z = DualPair::zero(3, 1.0);
  CHECK(z.primal()[0] == 0.0);
  DualPair p(std::vector<double>{0.5, 2.0, -3.0}, 1.0);
  CHECK(std::vector<double>(p.primal().begin(), p.primal().end()) ==
        std::vector<double>{0.0, 1.0, -2.0});
  const std::vector<double> dir{1.0, 0.0, 0.0};
  p.shift_dual(-2.0, dir);
  CHECK(p.dual()[0] == 2.5);
  CHECK(p.primal()[0] == 1.5);
}

TEST_CASE("inexact_step examples") {
  const std::vector<double> a{1.0, 0.0};
  const std::vector<double> x{3.0, 4.0};
  CHECK(inexact_step(x, a, 1.0) == 2.0);
  const std::vector<double> on{1.0, 7.0};
  CHECK(inexact_step(on, a, 1.0) == 0.0);
  const std::vector<double> b{0.6, 0.8};
  const std::vector<double> ones{1.0, 1.0};
  CHECK(inexact_step(ones, b, 0.0) == doctest::Approx(1.4).epsilon(1e-15));
}

TEST_CASE("exact_step examples") {
  const std::vector<double> a{1.0};
  const std::vector<double> dual{0.0};
  CHECK(exact_step(dual, a, 0.5, 1.0) == doctest::Approx(-1.5).epsilon(1e-14));
  CHECK(oracle::exact_step_bisection({0.0}, {1.0}, 0.5, 1.0) == doctest::Approx(-1.5).epsilon(1e-12));

  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    const auto d = gaussian(5, rng, 2.0);
    const auto r = unit(gaussian(5, rng));
    const double b = dot(r, soft_threshold(d, 0.9));
    CHECK(std::abs(exact_step(d, r, b, 0.9)) <= 1e-12);
  }
}

TEST_CASE("exact_step equals inexact_step when lambda = 0") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 200; ++rep) {
    const auto d = gaussian(6, rng);
    const auto a = unit(gaussian(6, rng));
    const double b = gaussian(1, rng)[0];
    CHECK(std::abs(exact_step(d, a, b, 0.0) - inexact_step(d, a, b)) <= 1e-12);
  }
}

TEST_CASE("exact_step agrees with bisection on g'") {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> dim(1, 20);
  std::uniform_real_distribution<double> lam(0.0, 2.0);
  for (int rep = 0; rep < 300; ++rep) {
    const auto n = static_cast<std::size_t>(dim(rng));
    const auto d = gaussian(n, rng, 2.0);
    const auto a = unit(gaussian(n, rng));
    const double b = gaussian(1, rng, 2.0)[0];
    const double l = lam(rng);
    const double t = exact_step(d, a, b, l);
    CHECK(std::abs(t - oracle::exact_step_bisection(d, a, b, l)) <= 1e-8);
    std::vector<double> moved = d;
    for (std::size_t j = 0; j < n; ++j) moved[j] -= t * a[j];
    CHECK(std::abs(b - dot(a, soft_threshold(moved, l))) <= 1e-12 * (1.0 + std::abs(b)));
  }
}

TEST_CASE("exact_step on a flat segment returns its midpoint") {
  // g'(t) = -S_1(-t): zero on [-1, 1].
  const std::vector<double> a{1.0};
  const std::vector<double> d{0.0};
  CHECK(exact_step(d, a, 0.0, 1.0) == 0.0);
  // g'(t) = 0 on [1, 3] around dual 2.
  const std::vector<double> d2{2.0};
  CHECK(exact_step(d2, a, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("exact_step rejects a zero row") {
  const std::vector<double> a{0.0, 0.0};
  const std::vector<double> d{1.0, 1.0};
  CHECK_THROWS_AS(exact_step(d, a, 1.0, 1.0), NumericalFailure);
}

TEST_CASE("project_hyperplane") {
  SUBCASE("lambda = 0 inexact is the orthogonal projection") {
    const DualPair p(std::vector<double>{3.0, 4.0}, 0.0);
    const std::vector<double> a{0.6, 0.8};
    const auto q = project_hyperplane(p, a, 1.0, StepMode::Inexact);
    // x - (<a,x> - b) a with <a,x> = 5.
    CHECK(q.primal()[0] == doctest::Approx(3.0 - 4.0 * 0.6).epsilon(1e-15));
    CHECK(q.primal()[1] == doctest::Approx(4.0 - 4.0 * 0.8).epsilon(1e-15));
  }
  SUBCASE("already feasible, exact step leaves the pair unchanged") {
    const DualPair p(std::vector<double>{2.0, -0.5}, 1.0);
    const std::vector<double> a{1.0, 0.0};
    const auto q = project_hyperplane(p, a, p.primal()[0], StepMode::Exact);
    CHECK(std::vector<double>(q.dual().begin(), q.dual().end()) ==
          std::vector<double>(p.dual().begin(), p.dual().end()));
  }
  SUBCASE("exact feasibility and the Bregman decrease in both modes") {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 300; ++rep) {
      const std::size_t n = 8;
      const auto a = unit(gaussian(n, rng));
      const auto y = gaussian(n, rng);
      const double b = dot(a, y);
      const DualPair p(gaussian(n, rng, 2.0), 1.0);
      const double r = inexact_step(p.primal(), a, b);
      for (StepMode mode : {StepMode::Exact, StepMode::Inexact}) {
        const auto q = project_hyperplane(p, a, b, mode);
        if (mode == StepMode::Exact) CHECK(std::abs(dot(a, q.primal()) - b) <= 1e-10);
        CHECK(bregman_distance(q, y) <= bregman_distance(p, y) - 0.5 * r * r + 1e-10);
      }
    }
  }
}
