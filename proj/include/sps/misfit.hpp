#pragma once

#include <utility>
#include <vector>

#include "sps/binning.hpp"
#include "sps/csr.hpp"
#include "sps/dense.hpp"
#include "sps/pattern.hpp"

namespace sps {

/// Kernel of the misfit J(X;A) = 1/2 ||(X-A) A^+||_F^2 + 1/2 ||A^+ (X-A)||_F^2:
///   w_row = A^+* A^+   (m x m, Hermitian PSD)
///   w_col = A^+  A^+*  (n x n, Hermitian PSD)
///   linear_term = A w_col + w_row A
/// so J(X) = const + 1/2 <X w_col, X> + 1/2 <w_row X, X> - Re<linear_term, X>.
template <typename T>
struct MisfitOperator {
    DenseMatrix<T> w_row;
    DenseMatrix<T> w_col;
    DenseMatrix<T> linear_term;
    DenseMatrix<T> pinv;
};

/// Bin-reduced quadratic system: minimize 1/2 y^T hessian y - rhs^T y over
/// the real bin unknowns. Assembled exactly symmetric.
struct ReducedSystem {
    DenseMatrix<double> hessian;
    std::vector<double> rhs;
    BinAssignment bins;
};

template <typename T>
MisfitOperator<T> build_misfit(const DenseMatrix<T>& a, const DenseMatrix<T>& pinv);

/// J(X;A) by the direct formula.
template <typename T>
double objective(const DenseMatrix<T>& x, const DenseMatrix<T>& a, const DenseMatrix<T>& pinv);

template <typename T>
double objective(const SparseMatrixCsr<T>& x, const DenseMatrix<T>& a,
                 const DenseMatrix<T>& pinv);

/// Second derivative of J between pattern coordinates (i,j) and (k,l):
/// delta_ik * w_col(l, j) + delta_jl * w_row(i, k).
template <typename T>
T pattern_hessian_entry(std::pair<index_t, index_t> pos1, std::pair<index_t, index_t> pos2,
                        const MisfitOperator<T>& mis);

/// Congruence of the pattern-restricted Hessian through the bin indicator,
/// accumulated over row pairs (w_col couplings) and column pairs (w_row
/// couplings) without materializing the full Hessian. Complex problems are
/// assembled in the doubled real parameterization: blocks
/// [Re H, -Im H; Im H, Re H] restricted through the bin map.
template <typename T>
ReducedSystem assemble_reduced(const MisfitOperator<T>& mis, const BinAssignment& bins);

}  // namespace sps
