#pragma once

#include <iosfwd>
#include <string>

#include "osborne/dense_matrix.hpp"

namespace osborne {

enum class MatrixFormat { matrix_market, dense_csv };

MatrixFormat format_from_name(const std::string& name);

// Matrix Market coordinate format, real field, general symmetry, 1-based
// indices; the %%MatrixMarket banner is validated when present. Duplicate
// coordinates are summed. Rejects non-square sizes and non-real fields with
// a ParseError carrying the offending line number.
DenseMatrix parse_matrix_market(std::istream& in);

// One row per line, comma-separated; the row count must equal the column
// count.
DenseMatrix parse_dense_csv(std::istream& in);

// Reads the file at `path` in the given format.
DenseMatrix parse_matrix(const std::string& path, MatrixFormat format);

}  // namespace osborne
