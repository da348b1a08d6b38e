#pragma once

#include <filesystem>
#include <iosfwd>

#include "sskm/linear_system.hpp"

namespace sskm {

// Reads a MatrixMarket "matrix" in coordinate or array format with a real
// or integer field and general, symmetric or skew-symmetric symmetry into a
// dense matrix. Indices are 1-based in the file; duplicate coordinate
// entries are summed and symmetric storage is mirrored.
//
// Throws ParseError (with the offending line number) on malformed input and
// UnsupportedField for complex, pattern or hermitian matrices.
DenseMatrix read_matrix_market(std::istream& in);
DenseMatrix read_matrix_market(const std::filesystem::path& path);

// Coordinate real general, nonzeros only, 17 significant digits, so that
// reading the output back reproduces every value bit for bit.
void write_matrix_market(std::ostream& out, const DenseMatrix& a);
void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& a);

}  // namespace sskm
