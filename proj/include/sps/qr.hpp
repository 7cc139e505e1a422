#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sps/dense.hpp"

namespace sps {

/// Column-pivoted Householder QR of A together with everything derived from
/// it: numerical rank, Moore-Penrose pseudoinverse, and orthonormal bases of
/// the left and right null-spaces.
///
/// The factorization satisfies A * P = Q * R with R upper triangular whose
/// diagonal is nonincreasing in magnitude; entries of R in rows >= rank are
/// zeroed once the numerical rank is known.
template <typename T>
struct QrPinvFactorization {
    DenseMatrix<T> q;        // m x m unitary
    DenseMatrix<T> r;        // m x n upper triangular (pivoted)
    std::vector<index_t> perm;  // perm[k] = source column of pivoted column k
    index_t rank = -1;
    double rank_tol = 0.0;

    DenseMatrix<T> pinv;        // n x m, valid once computed
    DenseMatrix<T> left_null;   // m x (m - rank), orthonormal columns
    DenseMatrix<T> right_null;  // n x (n - rank), orthonormal columns

    DenseMatrix<T> r11() const;  // rank x rank block
    DenseMatrix<T> r12() const;  // rank x (n - rank) block
};

/// Householder QR with greedy column pivoting on the remaining column norms.
/// Pivot ties go to the lowest column index, so runs are reproducible.
/// Only q, r, perm are filled; rank stays -1.
template <typename T>
QrPinvFactorization<T> pivoted_qr(const DenseMatrix<T>& a);

/// Rank decision from the pivoted R diagonal magnitudes (nonincreasing):
/// rank = #entries above max(m,n) * eps * |r_diag[0]|. Returns {rank, tol}.
std::pair<index_t, double> numerical_rank(const std::vector<double>& r_diag_mags,
                                          index_t m, index_t n);

/// A^+ = P * T^* (T T^*)^{-1} * Q1^* with T = [R11 R12]; the middle inverse
/// goes through the Cholesky factor of T T^*. Requires rank >= 0.
template <typename T>
DenseMatrix<T> pseudoinverse_from_qr(const QrPinvFactorization<T>& f);

/// Last m - rank columns of Q; A^* basis = 0 by construction.
template <typename T>
DenseMatrix<T> left_nullspace_basis(const QrPinvFactorization<T>& f);

/// P * [-R11^{-1} R12; I], then orthonormalized.
template <typename T>
DenseMatrix<T> right_nullspace_basis(const QrPinvFactorization<T>& f);

/// Thin QR by two passes of modified Gram-Schmidt. Columns must be linearly
/// independent; a norm collapse below 1e3 * eps * original signals an
/// upstream rank inconsistency and throws. Each output column is scaled so
/// its first nonzero component is positive real.
template <typename T>
DenseMatrix<T> orthonormalize(const DenseMatrix<T>& cols);

/// Full pipeline entry: QR, rank (optionally with a caller tolerance),
/// pseudoinverse, and null-space bases (empty when full rank).
template <typename T>
QrPinvFactorization<T> factorize_with_pinv(const DenseMatrix<T>& a,
                                           std::optional<double> rank_tol_override = {});

}  // namespace sps
