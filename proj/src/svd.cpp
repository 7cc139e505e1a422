#include "sps/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sps/kernels.hpp"

namespace sps {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// One cyclic sweep of one-sided Jacobi on w (m x n, m >= n), accumulating
// the rotations into v when it is non-empty. Returns the number of
// rotations applied.
template <typename T>
index_t jacobi_sweep(DenseMatrix<T>& w, DenseMatrix<T>* v) {
    const index_t n = w.cols();
    const std::size_t m = static_cast<std::size_t>(w.rows());
    index_t rotations = 0;
    for (index_t p = 0; p < n - 1; ++p) {
        for (index_t q = p + 1; q < n; ++q) {
            const double a = kernels::nrm2sq(m, w.col(p));
            const double b = kernels::nrm2sq(m, w.col(q));
            if (a == 0.0 || b == 0.0) continue;
            const T c = kernels::dot_conj(m, w.col(p), w.col(q));
            const double ac = std::abs(c);
            if (ac <= 8.0 * kEps * std::sqrt(a * b)) continue;

            const T ph = c / T{ac};
            const double tau = (b - a) / (2.0 * ac);
            const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double cs = 1.0 / std::sqrt(1.0 + t * t);
            const double sn = t * cs;

            // column mix [w_p w_q] <- [w_p w_q] * G, G = diag(1, conj(ph)) * givens
            const T axx = T{cs};
            const T axy = T{-sn} * conj_of(ph);
            const T ayx = T{sn};
            const T ayy = T{cs} * conj_of(ph);
            kernels::mix2(m, w.col(p), w.col(q), axx, axy, ayx, ayy);
            if (v != nullptr)
                kernels::mix2(static_cast<std::size_t>(v->rows()), v->col(p), v->col(q),
                              axx, axy, ayx, ayy);
            ++rotations;
        }
    }
    return rotations;
}

template <typename T>
JacobiSvd<T> jacobi_svd_tall(const DenseMatrix<T>& a, bool want_uv) {
    const index_t m = a.rows();
    const index_t n = a.cols();
    DenseMatrix<T> w = a;
    DenseMatrix<T> v = want_uv ? DenseMatrix<T>::identity(n) : DenseMatrix<T>();

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (jacobi_sweep(w, want_uv ? &v : nullptr) == 0) break;
    }

    JacobiSvd<T> out;
    out.sigma.resize(static_cast<std::size_t>(n));
    for (index_t j = 0; j < n; ++j)
        out.sigma[j] = std::sqrt(kernels::nrm2sq(static_cast<std::size_t>(m), w.col(j)));

    std::vector<index_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](index_t i, index_t j) { return out.sigma[i] > out.sigma[j]; });

    std::vector<double> sorted(static_cast<std::size_t>(n));
    for (index_t j = 0; j < n; ++j) sorted[j] = out.sigma[order[j]];
    out.sigma = std::move(sorted);

    if (want_uv) {
        out.u = DenseMatrix<T>(m, n);
        out.v = DenseMatrix<T>(n, n);
        for (index_t j = 0; j < n; ++j) {
            const index_t s = order[j];
            for (index_t i = 0; i < n; ++i) out.v(i, j) = v(i, s);
            if (out.sigma[j] > 0.0) {
                const double inv = 1.0 / out.sigma[j];
                for (index_t i = 0; i < m; ++i) out.u(i, j) = w(i, s) * T{inv};
            }
        }
    }
    return out;
}

}  // namespace

template <typename T>
JacobiSvd<T> jacobi_svd(const DenseMatrix<T>& a, bool want_uv) {
    require_finite(a, "jacobi_svd");
    if (a.rows() >= a.cols()) return jacobi_svd_tall(a, want_uv);
    JacobiSvd<T> t = jacobi_svd_tall(adjoint(a), want_uv);
    JacobiSvd<T> out;
    out.sigma = std::move(t.sigma);
    out.u = std::move(t.v);
    out.v = std::move(t.u);
    return out;
}

template <typename T>
std::vector<double> singular_values(const DenseMatrix<T>& a) {
    return jacobi_svd(a, false).sigma;
}

template <typename T>
double condition_number(const DenseMatrix<T>& a, index_t rank) {
    require_finite(a, "condition_number");
    if (rank < 1 || rank > std::min(a.rows(), a.cols()))
        throw std::invalid_argument("condition_number: rank out of range");
    const std::vector<double> s = singular_values(a);
    const double smallest = s[static_cast<std::size_t>(rank - 1)];
    if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
    return s[0] / smallest;
}

template <typename T>
DenseMatrix<T> pseudoinverse_via_svd(const DenseMatrix<T>& a) {
    const JacobiSvd<T> s = jacobi_svd(a, true);
    const index_t m = a.rows();
    const index_t n = a.cols();
    const index_t k = std::min(m, n);
    DenseMatrix<T> pinv(n, m);
    if (s.sigma.empty() || s.sigma[0] == 0.0) return pinv;
    const double tol = static_cast<double>(std::max(m, n)) * (kEps / 2.0) * s.sigma[0];
    for (index_t t = 0; t < k; ++t) {
        if (s.sigma[t] <= tol) break;
        const double inv = 1.0 / s.sigma[t];
        // pinv += inv * v_t * u_t^*
        for (index_t j = 0; j < m; ++j)
            kernels::axpy(static_cast<std::size_t>(n), T{inv} * conj_of(s.u(j, t)),
                          s.v.col(t), pinv.col(j));
    }
    return pinv;
}

#define SPS_INSTANTIATE(T)                                                 \
    template JacobiSvd<T> jacobi_svd<T>(const DenseMatrix<T>&, bool);      \
    template std::vector<double> singular_values<T>(const DenseMatrix<T>&); \
    template double condition_number<T>(const DenseMatrix<T>&, index_t);   \
    template DenseMatrix<T> pseudoinverse_via_svd<T>(const DenseMatrix<T>&);

SPS_INSTANTIATE(double)
SPS_INSTANTIATE(std::complex<double>)

#undef SPS_INSTANTIATE

}  // namespace sps
