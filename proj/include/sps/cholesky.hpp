#pragma once

#include "sps/dense.hpp"

namespace sps {

/// In-place lower Cholesky of a Hermitian positive-definite matrix.
/// Returns false on a non-positive pivot; the upper triangle is ignored.
template <typename T>
bool cholesky_in_place(DenseMatrix<T>& a);

/// Solve L X = B in place (L lower triangular, unit or not per its entries).
template <typename T>
void solve_lower(const DenseMatrix<T>& l, DenseMatrix<T>& b);

/// Solve L^* X = B in place.
template <typename T>
void solve_lower_adjoint(const DenseMatrix<T>& l, DenseMatrix<T>& b);

/// Solve U X = B in place (U upper triangular, taken from the leading
/// rows/cols of u).
template <typename T>
void solve_upper(const DenseMatrix<T>& u, DenseMatrix<T>& b);

}  // namespace sps
