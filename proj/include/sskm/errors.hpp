#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sskm {

// Bad input data or a numerical breakdown. The CLI maps these to exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration. The CLI maps these to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroRowError : public DataError {
 public:
  explicit ZeroRowError(std::size_t row)
      : DataError("row " + std::to_string(row) + " has zero norm"), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class DimensionMismatch : public DataError {
 public:
  using DataError::DataError;
};

class IndexOutOfRange : public DataError {
 public:
  using DataError::DataError;
};

class NumericalFailure : public DataError {
 public:
  using DataError::DataError;
};

class NonFiniteIterate : public DataError {
 public:
  using DataError::DataError;
};

class ZeroTruth : public DataError {
 public:
  ZeroTruth() : DataError("ground truth is the zero vector") {}
};

class ZeroMatrix : public DataError {
 public:
  ZeroMatrix() : DataError("matrix has no nonzero singular value") {}
};

class AllZero : public DataError {
 public:
  AllZero() : DataError("vector has no nonzero entry") {}
};

class ZeroResidual : public DataError {
 public:
  ZeroResidual() : DataError("residual is identically zero") {}
};

class EmptySubset : public DataError {
 public:
  EmptySubset() : DataError("row subset is empty") {}
};

class InvalidBeta : public ConfigError {
 public:
  InvalidBeta(std::size_t beta, std::size_t m)
      : ConfigError("beta=" + std::to_string(beta) + " outside [1, " +
                    std::to_string(m) + "]") {}
};

class TooManySubsets : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class InvalidGamma : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class InvalidSparsity : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedField : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace sskm
