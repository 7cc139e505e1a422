#pragma once

#include <vector>

#include "sps/dense.hpp"

namespace sps {

/// Economy SVD, a = u * diag(sigma) * v^*, singular values descending.
/// u is m x k and v is n x k with k = min(m, n); columns of u matching
/// sigma == 0 are zero vectors.
template <typename T>
struct JacobiSvd {
    std::vector<double> sigma;
    DenseMatrix<T> u;
    DenseMatrix<T> v;
};

/// One-sided Jacobi SVD. Used for diagnostics and test oracles only; the
/// sparsification path never calls it.
template <typename T>
JacobiSvd<T> jacobi_svd(const DenseMatrix<T>& a, bool want_uv = true);

template <typename T>
std::vector<double> singular_values(const DenseMatrix<T>& a);

/// sigma_1 / sigma_rank; +infinity when sigma_rank underflows to zero.
template <typename T>
double condition_number(const DenseMatrix<T>& a, index_t rank);

/// SVD-based Moore-Penrose pseudoinverse: invert singular values above
/// max(m,n) * u * sigma_max, drop the rest.
template <typename T>
DenseMatrix<T> pseudoinverse_via_svd(const DenseMatrix<T>& a);

}  // namespace sps
