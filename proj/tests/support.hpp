#pragma once

#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "sps/dense.hpp"

// Shared helpers for the test suites. Oracles here are deliberately written
// from the textbook definitions, independent of the library internals they
// check.

namespace testsup {

using sps::DenseMatrix;
using sps::index_t;
using zd = std::complex<double>;

inline double rand_value(std::mt19937& rng, double /*tag*/) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    return dist(rng);
}

inline zd rand_value(std::mt19937& rng, zd /*tag*/) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const double re = dist(rng);
    const double im = dist(rng);
    return {re, im};
}

template <typename T>
DenseMatrix<T> random_matrix(index_t m, index_t n, unsigned seed) {
    std::mt19937 rng(seed);
    DenseMatrix<T> a(m, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < m; ++i) a(i, j) = rand_value(rng, T{});
    return a;
}

/// Random m x n matrix of exact rank r (outer-product construction).
template <typename T>
DenseMatrix<T> random_rank_deficient(index_t m, index_t n, index_t r, unsigned seed) {
    const DenseMatrix<T> b = random_matrix<T>(m, r, seed);
    const DenseMatrix<T> c = random_matrix<T>(r, n, seed + 1000003);
    return sps::multiply(b, c);
}

template <typename T>
DenseMatrix<T> random_hermitian(index_t n, unsigned seed) {
    const DenseMatrix<T> b = random_matrix<T>(n, n, seed);
    DenseMatrix<T> a(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) a(i, j) = b(i, j) + sps::conj_of(b(j, i));
    return a;
}

template <typename T>
DenseMatrix<T> random_skew_hermitian(index_t n, unsigned seed) {
    const DenseMatrix<T> b = random_matrix<T>(n, n, seed);
    DenseMatrix<T> a(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) a(i, j) = b(i, j) - sps::conj_of(b(j, i));
    return a;
}

inline DenseMatrix<zd> random_complex_symmetric(index_t n, unsigned seed) {
    const DenseMatrix<zd> b = random_matrix<zd>(n, n, seed);
    DenseMatrix<zd> a(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) a(i, j) = b(i, j) + b(j, i);
    return a;
}

template <typename T>
double max_abs_diff(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    double d = 0.0;
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < a.rows(); ++i)
            d = std::max(d, std::abs(a(i, j) - b(i, j)));
    return d;
}

/// Brute-force one-pass modified Gram-Schmidt thin QR; columns assumed
/// independent. Oracle for the Householder factorization and for
/// orthonormalize().
template <typename T>
std::pair<DenseMatrix<T>, DenseMatrix<T>> mgs_qr(const DenseMatrix<T>& a) {
    const index_t m = a.rows();
    const index_t n = a.cols();
    DenseMatrix<T> q = a;
    DenseMatrix<T> r(n, n);
    for (index_t j = 0; j < n; ++j) {
        for (index_t i = 0; i < j; ++i) {
            T c{};
            for (index_t k = 0; k < m; ++k) c += sps::conj_of(q(k, i)) * q(k, j);
            r(i, j) = c;
            for (index_t k = 0; k < m; ++k) q(k, j) -= c * q(k, i);
        }
        double norm = 0.0;
        for (index_t k = 0; k < m; ++k) norm += std::norm(q(k, j));
        norm = std::sqrt(norm);
        r(j, j) = T{norm};
        for (index_t k = 0; k < m; ++k) q(k, j) = q(k, j) / T{norm};
    }
    return {q, r};
}

/// Orthonormal basis of the row space of c (MGS on the adjoint columns,
/// dropping dependent ones); used to project onto the null space of c.
template <typename T>
DenseMatrix<T> rowspace_basis(const DenseMatrix<T>& c, double drop_tol = 1e-10) {
    const DenseMatrix<T> ct = sps::adjoint(c);
    const index_t m = ct.rows();
    std::vector<std::vector<T>> basis;
    for (index_t j = 0; j < ct.cols(); ++j) {
        std::vector<T> v(static_cast<std::size_t>(m));
        for (index_t k = 0; k < m; ++k) v[static_cast<std::size_t>(k)] = ct(k, j);
        double orig = 0.0;
        for (const T& x : v) orig += std::norm(x);
        orig = std::sqrt(orig);
        if (orig == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                T c2{};
                for (index_t k = 0; k < m; ++k)
                    c2 += sps::conj_of(b[static_cast<std::size_t>(k)]) * v[static_cast<std::size_t>(k)];
                for (index_t k = 0; k < m; ++k)
                    v[static_cast<std::size_t>(k)] -= c2 * b[static_cast<std::size_t>(k)];
            }
        }
        double norm = 0.0;
        for (const T& x : v) norm += std::norm(x);
        norm = std::sqrt(norm);
        if (norm <= drop_tol * orig) continue;
        for (T& x : v) x = x / T{norm};
        basis.push_back(std::move(v));
    }
    DenseMatrix<T> out(m, static_cast<index_t>(basis.size()));
    for (index_t j = 0; j < out.cols(); ++j)
        for (index_t k = 0; k < m; ++k) out(k, j) = basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    return out;
}

/// || b1 b1^* - b2 b2^* ||_F, zero iff the two orthonormal column sets span
/// the same subspace.
template <typename T>
double projector_distance(const DenseMatrix<T>& b1, const DenseMatrix<T>& b2) {
    const DenseMatrix<T> p1 = sps::multiply_adjoint_right(b1, b1);
    const DenseMatrix<T> p2 = sps::multiply_adjoint_right(b2, b2);
    return sps::frobenius_norm(sps::subtract(p1, p2));
}

}  // namespace testsup
