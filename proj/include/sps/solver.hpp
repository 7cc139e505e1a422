#pragma once

#include <vector>

#include "sps/binning.hpp"
#include "sps/csr.hpp"
#include "sps/dense.hpp"
#include "sps/misfit.hpp"
#include "sps/pattern.hpp"

namespace sps {

struct SpdSolveResult {
    std::vector<double> y;
    bool ridge_used = false;
};

/// Cholesky solve of the reduced system. A non-positive pivot triggers one
/// retry with ridge 1e-12 * trace(H)/n on the diagonal; failing that throws.
/// An identically zero system with zero right-hand side returns y = 0.
SpdSolveResult solve_spd(const ReducedSystem& sys);

/// Scatter bin values back to the pattern: every position receives its
/// bin's value (real and imaginary parts composed for complex output).
template <typename T>
SparseMatrixCsr<T> expand_bins(const std::vector<double>& y, const BinAssignment& bins);

/// Null-space constraints of the second optimization step: X right_null = 0
/// and left_null^* X = 0 on the pattern coordinates.
template <typename T>
struct ConstraintOperator {
    SparsityPattern pattern;
    DenseMatrix<T> right_null;  // n x k_r, orthonormal columns
    DenseMatrix<T> left_null;   // m x k_l, orthonormal columns
};

template <typename T>
struct ProjectionResult {
    SparseMatrixCsr<T> x;
    index_t iterations = 0;
    double relative_residual = 0.0;
    bool converged = true;
};

/// Frobenius-orthogonal projection of y onto the constraint null set,
/// computed by conjugate gradients on the dual system (C C^*) lambda = C y
/// with matrix-free applications of C; x = y - C^* lambda. Uzawa with
/// conjugate directions collapses to exactly this because the Hessian of
/// the projection problem is the identity.
template <typename T>
ProjectionResult<T> impose_nullspaces(const SparseMatrixCsr<T>& y,
                                      const ConstraintOperator<T>& c, double tol = 1e-12);

/// One-step solve of the full problem on pattern coordinates via the dense
/// KKT system [H, C^*; C, 0][x; lambda] = [g; 0], solved by QR-based least
/// squares. Guarded to nnz <= 2000; larger problems must use the two-step
/// path. Kept as the oracle and for small production inputs.
template <typename T>
SparseMatrixCsr<T> solve_exact(const DenseMatrix<T>& a, const DenseMatrix<T>& pinv,
                               const SparsityPattern& pattern,
                               const DenseMatrix<T>& right_null,
                               const DenseMatrix<T>& left_null);

}  // namespace sps
