#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sskm {

double dot(std::span<const double> a, std::span<const double> b);

// Row-major dense matrix. Used for raw (unnormalized) input and as the
// storage behind LinearSystem.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols, cols};
  }
  std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }

  std::vector<double> multiply(std::span<const double> x) const;

  bool operator==(const DenseMatrix&) const = default;
};

struct ResidualVector {
  std::vector<double> values;  // Ax - b

  double squared_norm() const;
  double norm() const;
};

// A consistent-or-not system Ax = b whose rows have been scaled to unit
// Euclidean norm. The original row norms are kept in row_scales so that
// raw residuals can be recovered as scale_i * residual_i.
//
// Immutable after construction.
class LinearSystem {
 public:
  // Throws ZeroRowError for a row with norm below 1e-14 and
  // DimensionMismatch when rhs.size() != raw.rows.
  static LinearSystem normalize_rows(const DenseMatrix& raw, std::span<const double> rhs);

  std::size_t rows() const noexcept { return matrix_.rows; }
  std::size_t cols() const noexcept { return matrix_.cols; }

  std::span<const double> row(std::size_t i) const { return matrix_.row(i); }
  double rhs(std::size_t i) const { return rhs_[i]; }
  std::span<const double> rhs() const noexcept { return rhs_; }
  std::span<const double> row_scales() const noexcept { return scales_; }
  const DenseMatrix& matrix() const noexcept { return matrix_; }

  // Same rows, new right-hand side given in the normalized scale.
  LinearSystem with_rhs(std::vector<double> rhs) const;

  ResidualVector residual(std::span<const double> x) const;
  double residual_squared_norm(std::span<const double> x) const;
  double row_residual(std::size_t i, std::span<const double> x) const;

 private:
  LinearSystem(DenseMatrix m, std::vector<double> rhs, std::vector<double> scales)
      : matrix_(std::move(m)), rhs_(std::move(rhs)), scales_(std::move(scales)) {}

  DenseMatrix matrix_;
  std::vector<double> rhs_;
  std::vector<double> scales_;
};

}  // namespace sskm
