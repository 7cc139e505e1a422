#pragma once

#include <string>
#include <variant>

#include "sps/csr.hpp"
#include "sps/dense.hpp"

namespace sps {

using DenseVariant = std::variant<DenseMatrix<double>, DenseMatrix<std::complex<double>>>;

/// Parse failure carrying the 1-based line number.
class MatrixMarketError : public std::runtime_error {
  public:
    MatrixMarketError(const std::string& what, long line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const { return line_; }

  private:
    long line_;
};

/// Reads Matrix Market `array` (dense) or `coordinate` (sparse) files, real
/// or complex, expanding symmetric / hermitian / skew-symmetric storage.
/// Values must be finite; coordinate files must not repeat an entry.
DenseVariant read_matrix_market(const std::string& path);

/// Dense array format, general storage, 17 significant digits.
void write_matrix_market(const std::string& path, const DenseMatrix<double>& a);
void write_matrix_market(const std::string& path, const DenseMatrix<std::complex<double>>& a);

/// Coordinate format sorted by (row, col), 1-based indices.
void write_matrix_market(const std::string& path, const SparseMatrixCsr<double>& x);
void write_matrix_market(const std::string& path,
                         const SparseMatrixCsr<std::complex<double>>& x);

}  // namespace sps
