#pragma once

#include <string>

#include "randnla/types.hpp"

namespace randnla {

enum class MatrixFormat { kMatrixMarket, kCsv };

/// Raised on malformed input; the message carries the path and, for
/// content errors, the 1-based line number.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Infers the format from the extension: .mtx / .mm -> Matrix Market,
/// anything else -> CSV.
MatrixFormat format_from_path(const std::string& path);

/// Matrix Market supports both the array and coordinate layouts
/// (coordinate files are densified). CSV rows are matrix rows.
DenseMatrix load_matrix(const std::string& path, MatrixFormat format);
DenseMatrix load_matrix(const std::string& path);

/// Inverse of load_matrix up to float round-trip: values are emitted with
/// 17 significant digits. Matrix Market always writes the array layout.
void save_matrix(const DenseMatrix& m, const std::string& path,
                 MatrixFormat format);
void save_matrix(const DenseMatrix& m, const std::string& path);

}  // namespace randnla
