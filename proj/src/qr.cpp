#include "sps/qr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sps/cholesky.hpp"
#include "sps/kernels.hpp"

namespace sps {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;

template <typename T>
T phase_of(T x) {
    const double ax = std::abs(x);
    return ax == 0.0 ? T{1} : x / T{ax};
}

}  // namespace

template <typename T>
DenseMatrix<T> QrPinvFactorization<T>::r11() const {
    DenseMatrix<T> b(rank, rank);
    for (index_t j = 0; j < rank; ++j)
        for (index_t i = 0; i <= j; ++i) b(i, j) = r(i, j);
    return b;
}

template <typename T>
DenseMatrix<T> QrPinvFactorization<T>::r12() const {
    const index_t n = r.cols();
    DenseMatrix<T> b(rank, n - rank);
    for (index_t j = rank; j < n; ++j)
        for (index_t i = 0; i < rank; ++i) b(i, j - rank) = r(i, j);
    return b;
}

template <typename T>
QrPinvFactorization<T> pivoted_qr(const DenseMatrix<T>& a) {
    require_finite(a, "pivoted_qr");
    const index_t m = a.rows();
    const index_t n = a.cols();

    QrPinvFactorization<T> f;
    f.q = DenseMatrix<T>::identity(m);
    f.r = a;
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), 0);

    DenseMatrix<T>& w = f.r;
    std::vector<T> v(m);

    const index_t steps = std::min(m, n);
    for (index_t k = 0; k < steps; ++k) {
        // greedy pivot: largest remaining column norm, lowest index on ties
        index_t piv = k;
        double best = kernels::nrm2sq(static_cast<std::size_t>(m - k), w.col(k) + k);
        for (index_t j = k + 1; j < n; ++j) {
            const double nj = kernels::nrm2sq(static_cast<std::size_t>(m - k), w.col(j) + k);
            if (nj > best) {
                best = nj;
                piv = j;
            }
        }
        if (best == 0.0) break;  // trailing block is exactly zero
        if (piv != k) {
            for (index_t i = 0; i < m; ++i) std::swap(w(i, k), w(i, piv));
            std::swap(f.perm[k], f.perm[piv]);
        }

        // Householder on w(k:m, k); skipped when the subdiagonal part is
        // already zero so that triangular inputs pass through unchanged.
        const std::size_t len = static_cast<std::size_t>(m - k);
        double tail = 0.0;
        for (index_t i = k + 1; i < m; ++i) tail += std::norm(w(i, k));
        if (tail == 0.0) continue;

        const double normx = std::sqrt(kernels::nrm2sq(len, w.col(k) + k));
        const T beta = -phase_of(w(k, k)) * T{normx};
        for (index_t i = k; i < m; ++i) v[i] = w(i, k);
        v[k] -= beta;
        const double vnorm2 = kernels::nrm2sq(len, v.data() + k);
        const double tau = 2.0 / vnorm2;

        w(k, k) = beta;
        for (index_t i = k + 1; i < m; ++i) w(i, k) = T{};
        for (index_t j = k + 1; j < n; ++j) {
            const T c = kernels::dot_conj(len, v.data() + k, w.col(j) + k);
            kernels::axpy(len, T{-tau} * c, v.data() + k, w.col(j) + k);
        }
        // q := q * H_k, a rank-1 update with u = q * v
        std::vector<T> u(m, T{});
        for (index_t i = k; i < m; ++i)
            kernels::axpy(static_cast<std::size_t>(m), v[i], f.q.col(i), u.data());
        for (index_t j = k; j < m; ++j)
            kernels::axpy(static_cast<std::size_t>(m), T{-tau} * conj_of(v[j]), u.data(),
                          f.q.col(j));
    }
    return f;
}

std::pair<index_t, double> numerical_rank(const std::vector<double>& r_diag_mags,
                                          index_t m, index_t n) {
    if (r_diag_mags.empty()) return {0, 0.0};
    const double tol = static_cast<double>(std::max(m, n)) * kUnitRoundoff * r_diag_mags[0];
    index_t rank = 0;
    while (rank < static_cast<index_t>(r_diag_mags.size()) && r_diag_mags[rank] > tol) ++rank;
    return {rank, tol};
}

template <typename T>
DenseMatrix<T> pseudoinverse_from_qr(const QrPinvFactorization<T>& f) {
    const index_t m = f.q.rows();
    const index_t n = f.r.cols();
    const index_t r = f.rank;
    if (r < 0) throw std::invalid_argument("pseudoinverse_from_qr: rank not computed");
    DenseMatrix<T> pinv(n, m);
    if (r == 0) return pinv;

    // T = [R11 R12] (r x n); A^+ = P T^* (T T^*)^{-1} Q1^*
    DenseMatrix<T> t(r, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < r && i <= j; ++i) t(i, j) = f.r(i, j);
    DenseMatrix<T> gram = multiply_adjoint_right(t, t);
    if (!cholesky_in_place(gram))
        throw std::runtime_error(
            "pseudoinverse_from_qr: Cholesky breakdown in T T^*; rank_tol inconsistent");

    DenseMatrix<T> z(r, m);  // starts as Q1^*
    for (index_t j = 0; j < m; ++j)
        for (index_t i = 0; i < r; ++i) z(i, j) = conj_of(f.q(j, i));
    solve_lower(gram, z);
    solve_lower_adjoint(gram, z);

    DenseMatrix<T> b = multiply_adjoint_left(t, z);  // n x m, row i belongs to perm[i]
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < m; ++j) pinv(f.perm[i], j) = b(i, j);
    return pinv;
}

template <typename T>
DenseMatrix<T> left_nullspace_basis(const QrPinvFactorization<T>& f) {
    const index_t m = f.q.rows();
    const index_t r = f.rank;
    DenseMatrix<T> basis(m, m - r);
    for (index_t j = r; j < m; ++j)
        for (index_t i = 0; i < m; ++i) basis(i, j - r) = f.q(i, j);
    return basis;
}

template <typename T>
DenseMatrix<T> right_nullspace_basis(const QrPinvFactorization<T>& f) {
    const index_t n = f.r.cols();
    const index_t r = f.rank;
    const index_t k = n - r;
    DenseMatrix<T> basis(n, k);
    if (k == 0) return basis;

    // raw = P [ -R11^{-1} R12 ; I ], orthonormalized afterwards
    DenseMatrix<T> top = f.r12();
    if (r > 0) {
        solve_upper(f.r11(), top);
        for (index_t j = 0; j < k; ++j)
            kernels::scal(static_cast<std::size_t>(r), T{-1}, top.col(j));
    }
    for (index_t i = 0; i < r; ++i)
        for (index_t j = 0; j < k; ++j) basis(f.perm[i], j) = top(i, j);
    for (index_t i = 0; i < k; ++i) basis(f.perm[r + i], i) = T{1};
    return orthonormalize(basis);
}

template <typename T>
DenseMatrix<T> orthonormalize(const DenseMatrix<T>& cols) {
    const index_t m = cols.rows();
    const index_t n = cols.cols();
    DenseMatrix<T> q = cols;
    const std::size_t len = static_cast<std::size_t>(m);

    for (index_t j = 0; j < n; ++j) {
        const double orig = std::sqrt(kernels::nrm2sq(len, q.col(j)));
        for (int pass = 0; pass < 2; ++pass) {
            for (index_t i = 0; i < j; ++i) {
                const T c = kernels::dot_conj(len, q.col(i), q.col(j));
                kernels::axpy(len, -c, q.col(i), q.col(j));
            }
        }
        const double norm = std::sqrt(kernels::nrm2sq(len, q.col(j)));
        if (norm <= 1e3 * std::numeric_limits<double>::epsilon() * orig || norm == 0.0)
            throw std::runtime_error(
                "orthonormalize: dependent columns; upstream rank decision is inconsistent");
        kernels::scal(len, T{1.0 / norm}, q.col(j));
        // sign convention: first nonzero component positive real
        for (index_t i = 0; i < m; ++i) {
            const double ai = std::abs(q(i, j));
            if (ai != 0.0) {
                kernels::scal(len, conj_of(q(i, j)) / T{ai}, q.col(j));
                break;
            }
        }
    }
    return q;
}

template <typename T>
QrPinvFactorization<T> factorize_with_pinv(const DenseMatrix<T>& a,
                                           std::optional<double> rank_tol_override) {
    QrPinvFactorization<T> f = pivoted_qr(a);
    const index_t m = a.rows();
    const index_t n = a.cols();
    std::vector<double> diag(static_cast<std::size_t>(std::min(m, n)));
    for (std::size_t i = 0; i < diag.size(); ++i)
        diag[i] = std::abs(f.r(static_cast<index_t>(i), static_cast<index_t>(i)));

    if (rank_tol_override) {
        f.rank_tol = *rank_tol_override;
        f.rank = 0;
        while (f.rank < static_cast<index_t>(diag.size()) && diag[f.rank] > f.rank_tol) ++f.rank;
    } else {
        std::tie(f.rank, f.rank_tol) = numerical_rank(diag, m, n);
    }

    // below the numerical rank R is noise; zero it per the factorization contract
    for (index_t i = f.rank; i < m; ++i)
        for (index_t j = i; j < n; ++j) f.r(i, j) = T{};

    f.pinv = pseudoinverse_from_qr(f);
    f.left_null = left_nullspace_basis(f);
    f.right_null = right_nullspace_basis(f);
    return f;
}

#define SPS_INSTANTIATE(T)                                                            \
    template struct QrPinvFactorization<T>;                                           \
    template QrPinvFactorization<T> pivoted_qr<T>(const DenseMatrix<T>&);             \
    template DenseMatrix<T> pseudoinverse_from_qr<T>(const QrPinvFactorization<T>&);  \
    template DenseMatrix<T> left_nullspace_basis<T>(const QrPinvFactorization<T>&);   \
    template DenseMatrix<T> right_nullspace_basis<T>(const QrPinvFactorization<T>&);  \
    template DenseMatrix<T> orthonormalize<T>(const DenseMatrix<T>&);                 \
    template QrPinvFactorization<T> factorize_with_pinv<T>(const DenseMatrix<T>&,     \
                                                           std::optional<double>);

SPS_INSTANTIATE(double)
SPS_INSTANTIATE(std::complex<double>)

#undef SPS_INSTANTIATE

}  // namespace sps
