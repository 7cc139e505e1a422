#include "sps/cholesky.hpp"

#include <cmath>

namespace sps {

template <typename T>
bool cholesky_in_place(DenseMatrix<T>& a) {
    const index_t n = a.rows();
    for (index_t k = 0; k < n; ++k) {
        double d = real_of(a(k, k));
        for (index_t p = 0; p < k; ++p) {
            const T lkp = a(k, p);
            d -= real_of(lkp * conj_of(lkp));
        }
        if (!(d > 0.0)) return false;
        const double lkk = std::sqrt(d);
        a(k, k) = T{lkk};
        for (index_t i = k + 1; i < n; ++i) {
            T s = a(i, k);
            for (index_t p = 0; p < k; ++p) s -= a(i, p) * conj_of(a(k, p));
            a(i, k) = s / T{lkk};
        }
    }
    return true;
}

template <typename T>
void solve_lower(const DenseMatrix<T>& l, DenseMatrix<T>& b) {
    const index_t n = b.rows();
    for (index_t j = 0; j < b.cols(); ++j) {
        T* col = b.col(j);
        for (index_t i = 0; i < n; ++i) {
            T s = col[i];
            for (index_t p = 0; p < i; ++p) s -= l(i, p) * col[p];
            col[i] = s / l(i, i);
        }
    }
}

template <typename T>
void solve_lower_adjoint(const DenseMatrix<T>& l, DenseMatrix<T>& b) {
    const index_t n = b.rows();
    for (index_t j = 0; j < b.cols(); ++j) {
        T* col = b.col(j);
        for (index_t i = n - 1; i >= 0; --i) {
            T s = col[i];
            for (index_t p = i + 1; p < n; ++p) s -= conj_of(l(p, i)) * col[p];
            col[i] = s / conj_of(l(i, i));
        }
    }
}

template <typename T>
void solve_upper(const DenseMatrix<T>& u, DenseMatrix<T>& b) {
    const index_t n = b.rows();
    for (index_t j = 0; j < b.cols(); ++j) {
        T* col = b.col(j);
        for (index_t i = n - 1; i >= 0; --i) {
            T s = col[i];
            for (index_t p = i + 1; p < n; ++p) s -= u(i, p) * col[p];
            col[i] = s / u(i, i);
        }
    }
}

#define SPS_INSTANTIATE(T)                                             \
    template bool cholesky_in_place<T>(DenseMatrix<T>&);               \
    template void solve_lower<T>(const DenseMatrix<T>&, DenseMatrix<T>&); \
    template void solve_lower_adjoint<T>(const DenseMatrix<T>&, DenseMatrix<T>&); \
    template void solve_upper<T>(const DenseMatrix<T>&, DenseMatrix<T>&);

SPS_INSTANTIATE(double)
SPS_INSTANTIATE(std::complex<double>)

#undef SPS_INSTANTIATE

}  // namespace sps
