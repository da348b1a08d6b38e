#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "sskm/errors.hpp"
#include "sskm/matrix_market.hpp"
#include "sskm/rng.hpp"

using namespace sskm;

namespace {

DenseMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("coordinate real general") {
  const auto a = parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 3.0\n2 2 4.0\n");
  CHECK(a == DenseMatrix::from_rows({{3, 0}, {0, 4}}));
}

TEST_CASE("one-based indices land at zero-based positions") {
  const auto a = parse(
      "%%MatrixMarket matrix coordinate real general\n"
      "% comment\n"
      "3 3 3\n"
      "1 3 1.5\n"
      "3 1 -2\n"
      "2 2 7e-1\n");
  CHECK(a == DenseMatrix::from_rows({{0, 0, 1.5}, {0, 0.7, 0}, {-2, 0, 0}}));
}

TEST_CASE("symmetric lower triangle expands to the full matrix") {
  const auto a = parse(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "3 3 4\n"
      "1 1 1\n"
      "2 1 2\n"
      "3 2 3\n"
      "3 3 4\n");
  CHECK(a == DenseMatrix::from_rows({{1, 2, 0}, {2, 0, 3}, {0, 3, 4}}));
}

TEST_CASE("skew-symmetric mirrors with a sign flip") {
  const auto a = parse("%%MatrixMarket matrix coordinate real skew-symmetric\n3 3 1\n3 1 5\n");
  CHECK(a == DenseMatrix::from_rows({{0, 0, -5}, {0, 0, 0}, {5, 0, 0}}));
}

TEST_CASE("duplicate coordinates are summed") {
  const auto a = parse(
      "%%MatrixMarket matrix coordinate real general\n"
      "3 3 4\n"
      "2 2 0.25\n"
      "2 2 0.5\n"
      "1 3 1\n"
      "2 2 1\n");
  CHECK(a == DenseMatrix::from_rows({{0, 0, 1}, {0, 1.75, 0}, {0, 0, 0}}));
}

TEST_CASE("array format is column major") {
  const auto a = parse("%%MatrixMarket matrix array real general\n2 3\n1\n2\n3\n4\n5\n6\n");
  CHECK(a == DenseMatrix::from_rows({{1, 3, 5}, {2, 4, 6}}));
  const auto s = parse("%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n");
  CHECK(s == DenseMatrix::from_rows({{1, 2}, {2, 3}}));
}

TEST_CASE("integer field, mixed case banner and CRLF line endings") {
  const auto a = parse("%%MatrixMarket Matrix Coordinate Integer General\r\n2 2 1\r\n2 1 -3\r\n");
  CHECK(a == DenseMatrix::from_rows({{0, 0}, {-3, 0}}));
}

TEST_CASE("unsupported fields") {
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n"),
                  UnsupportedField);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n"),
                  UnsupportedField);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real hermitian\n1 1 1\n1 1 1\n"),
                  UnsupportedField);
}

TEST_CASE("parse errors carry the line number") {
  CHECK(error_line("%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 1\n") == 1);
  CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n") == 3);
  // Missing entries are reported at the end of input.
  CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n") == 4);
  CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n") == 3);
  CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2\n") == 2);
  CHECK(error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n2 2 2\n") == 4);
  CHECK_THROWS_AS(read_matrix_market(std::filesystem::path("/nonexistent/file.mtx")), DataError);
}

TEST_CASE("write then read reproduces every bit") {
  Rng rng = make_rng(1);
  std::normal_distribution<double> nd;
  std::bernoulli_distribution keep(0.4);
  for (int rep = 0; rep < 20; ++rep) {
    DenseMatrix a(3, 3);
    for (double& v : a.values)
      if (keep(rng)) v = nd(rng) * std::pow(10.0, nd(rng) * 5);
    a.values[4] = 1.0 / 3.0;
    std::stringstream io;
    write_matrix_market(io, a);
    CHECK(read_matrix_market(io) == a);
  }
  const auto tmp = std::filesystem::temp_directory_path() / "sskm_roundtrip.mtx";
  const auto b = DenseMatrix::from_rows({{0.1, 0, 2e-300}, {0, -7, 0}, {1e300, 0, 0.3}});
  write_matrix_market(tmp, b);
  CHECK(read_matrix_market(tmp) == b);
  std::filesystem::remove(tmp);
}
