#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sskm/errors.hpp"
#include "sskm/linear_system.hpp"

using namespace sskm;

namespace {

DenseMatrix random_matrix(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  DenseMatrix a(m, n);
  for (double& v : a.values) v = nd(rng);
  return a;
}

oracle::Rows to_rows(const DenseMatrix& a) {
  oracle::Rows r(a.rows, std::vector<double>(a.cols));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) r[i][j] = a(i, j);
  return r;
}

}  // namespace

TEST_CASE("normalize_rows divides each row and rhs by the row norm") {
  const double rhs[] = {5.0};
  const auto s = LinearSystem::normalize_rows(DenseMatrix::from_rows({{3, 4}}), rhs);
  CHECK(s.row(0)[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(s.row(0)[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(s.rhs(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.row_scales()[0] == 5.0);
}

TEST_CASE("already unit rows are unchanged") {
  const double rhs[] = {2.0, 3.0};
  const auto raw = DenseMatrix::from_rows({{1, 0}, {0, 1}});
  const auto s = LinearSystem::normalize_rows(raw, rhs);
  CHECK(s.matrix() == raw);
  CHECK(s.rhs(0) == 2.0);
  CHECK(s.rhs(1) == 3.0);
  CHECK(s.row_scales()[0] == 1.0);
  CHECK(s.row_scales()[1] == 1.0);
}

TEST_CASE("zero row is rejected with its index") {
  const double rhs[] = {1.0, 0.0};
  try {
    LinearSystem::normalize_rows(DenseMatrix::from_rows({{1, 1}, {0, 0}}), rhs);
    FAIL("expected ZeroRowError");
  } catch (const ZeroRowError& e) {
    CHECK(e.row() == 1);
  }
  const double one[] = {0.0};
  CHECK_THROWS_AS(LinearSystem::normalize_rows(DenseMatrix::from_rows({{0, 0}}), one), ZeroRowError);
}

TEST_CASE("mismatched rhs length") {
  const double rhs[] = {1.0};
  CHECK_THROWS_AS(LinearSystem::normalize_rows(DenseMatrix::from_rows({{1, 0}, {0, 1}}), rhs),
                  DimensionMismatch);
}

TEST_CASE("stored rows have unit norm") {
  std::mt19937_64 rng(3);
  const auto raw = random_matrix(20, 7, rng);
  const std::vector<double> rhs(20, 1.0);
  const auto s = LinearSystem::normalize_rows(raw, rhs);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    CHECK(std::abs(std::sqrt(dot(s.row(i), s.row(i))) - 1.0) <= 1e-12);
    CHECK(s.row_scales()[i] > 0.0);
  }
}

TEST_CASE("residual examples") {
  const double ones[] = {1.0, 1.0};
  const auto id = LinearSystem::normalize_rows(DenseMatrix::from_rows({{1, 0}, {0, 1}}), ones);
  const std::vector<double> x{1.0, 1.0};
  CHECK(id.residual(x).values == std::vector<double>{0.0, 0.0});

  const double one[] = {1.0};
  const auto s = LinearSystem::normalize_rows(DenseMatrix::from_rows({{1, 0}}), one);
  const std::vector<double> y{3.0, 4.0};
  CHECK(s.residual(y).values == std::vector<double>{2.0});
  CHECK(s.residual(y).squared_norm() == 4.0);

  const std::vector<double> bad{1.0};
  CHECK_THROWS_AS(s.residual(bad), DimensionMismatch);
}

TEST_CASE("residual matches the naive triple loop on random systems") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 20; ++rep) {
    // Unit rows so that normalization is exact and both sides see the same matrix.
    DenseMatrix raw = random_matrix(5, 3, rng);
    for (std::size_t i = 0; i < 5; ++i) {
      const double norm = std::sqrt(dot(raw.row(i), raw.row(i)));
      for (double& v : raw.row(i)) v /= norm;
    }
    const auto normalized = LinearSystem::normalize_rows(raw, std::vector<double>(5, 0.0));
    std::vector<double> b(5);
    for (double& v : b) v = nd(rng);
    const auto s = normalized.with_rhs(b);
    std::vector<double> x(3);
    for (double& v : x) v = nd(rng);
    const auto got = s.residual(x).values;
    const auto want = oracle::residual(to_rows(s.matrix()), b, x);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-15);
  }
}

TEST_CASE("row_residual") {
  const double zero[] = {0.0};
  const auto s = LinearSystem::normalize_rows(DenseMatrix::from_rows({{0.6, 0.8}}), zero);
  const std::vector<double> x{1.0, 1.0};
  CHECK(s.row_residual(0, x) == doctest::Approx(1.4).epsilon(1e-15));
  const std::vector<double> on{0.8, -0.6};
  CHECK(s.row_residual(0, on) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(s.row_residual(1, x), IndexOutOfRange);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  const auto raw = random_matrix(8, 4, rng);
  std::vector<double> b(8);
  for (double& v : b) v = nd(rng);
  const auto r = LinearSystem::normalize_rows(raw, b);
  std::vector<double> y(4);
  for (double& v : y) v = nd(rng);
  const auto all = r.residual(y).values;
  for (std::size_t i = 0; i < 8; ++i) CHECK(r.row_residual(i, y) == all[i]);
}

TEST_CASE("normalization preserves the solution set row by row") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 20; ++rep) {
    const auto raw = random_matrix(6, 4, rng);
    std::vector<double> c(6);
    for (double& v : c) v = nd(rng);
    const auto s = LinearSystem::normalize_rows(raw, c);
    std::vector<double> x(4);
    for (double& v : x) v = nd(rng);
    const auto raw_res = oracle::residual(to_rows(raw), c, x);
    const auto res = s.residual(x).values;
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(std::abs(res[i] * s.row_scales()[i] - raw_res[i]) <= 1e-12 * (1.0 + std::abs(raw_res[i])));
  }
}

TEST_CASE("residual is affine in x") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> nd;
  const auto raw = random_matrix(6, 4, rng);
  std::vector<double> b(6);
  for (double& v : b) v = nd(rng);
  const auto s = LinearSystem::normalize_rows(raw, b);
  std::vector<double> x(4);
  for (double& v : x) v = nd(rng);
  std::vector<double> scaled = x;
  for (double& v : scaled) v *= 2.5;
  const auto r1 = s.residual(x).values;
  const auto r2 = s.residual(scaled).values;
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(r2[i] == doctest::Approx(2.5 * (r1[i] + s.rhs(i)) - s.rhs(i)).epsilon(1e-12));
}
