#include "sskm/linear_system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sskm/errors.hpp"

namespace sskm {

namespace {
constexpr double kZeroRowNorm = 1e-14;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  DenseMatrix out(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != out.cols)
      throw DimensionMismatch("row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(out.cols));
    std::copy(rows[i].begin(), rows[i].end(), out.row(i).begin());
  }
  return out;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols)
    throw DimensionMismatch("vector length " + std::to_string(x.size()) +
                            " does not match column count " + std::to_string(cols));
  std::vector<double> y(rows);
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot(row(i), x);
  return y;
}

double ResidualVector::squared_norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s;
}

double ResidualVector::norm() const { return std::sqrt(squared_norm()); }

LinearSystem LinearSystem::normalize_rows(const DenseMatrix& raw, std::span<const double> rhs) {
  if (rhs.size() != raw.rows)
    throw DimensionMismatch("rhs length " + std::to_string(rhs.size()) +
                            " does not match row count " + std::to_string(raw.rows));
  if (raw.rows == 0 || raw.cols == 0) throw DimensionMismatch("empty matrix");

  DenseMatrix m = raw;
  std::vector<double> b(rhs.begin(), rhs.end());
  std::vector<double> scales(raw.rows);
  for (std::size_t i = 0; i < raw.rows; ++i) {
    const double norm = std::sqrt(dot(raw.row(i), raw.row(i)));
    if (!(norm >= kZeroRowNorm)) throw ZeroRowError(i);
    scales[i] = norm;
    if (norm != 1.0) {
      for (double& v : m.row(i)) v /= norm;
      b[i] /= norm;
    }
  }
  return LinearSystem(std::move(m), std::move(b), std::move(scales));
}

LinearSystem LinearSystem::with_rhs(std::vector<double> rhs) const {
  if (rhs.size() != rows())
    throw DimensionMismatch("rhs length " + std::to_string(rhs.size()) +
                            " does not match row count " + std::to_string(rows()));
  return LinearSystem(matrix_, std::move(rhs), scales_);
}

ResidualVector LinearSystem::residual(std::span<const double> x) const {
  if (x.size() != cols())
    throw DimensionMismatch("iterate length " + std::to_string(x.size()) +
                            " does not match column count " + std::to_string(cols()));
  ResidualVector r{std::vector<double>(rows())};
  for (std::size_t i = 0; i < rows(); ++i) r.values[i] = dot(row(i), x) - rhs_[i];
  return r;
}

double LinearSystem::residual_squared_norm(std::span<const double> x) const {
  return residual(x).squared_norm();
}

double LinearSystem::row_residual(std::size_t i, std::span<const double> x) const {
  if (i >= rows())
    throw IndexOutOfRange("row " + std::to_string(i) + " out of range for " +
                          std::to_string(rows()) + " rows");
  if (x.size() != cols())
    throw DimensionMismatch("iterate length " + std::to_string(x.size()) +
                            " does not match column count " + std::to_string(cols()));
  return dot(row(i), x) - rhs_[i];
}

}  // namespace sskm
