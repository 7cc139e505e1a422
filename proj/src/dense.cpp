#include "sps/dense.hpp"

#include <cmath>

#include "sps/kernels.hpp"

namespace sps {

template <typename T>
bool all_finite(const DenseMatrix<T>& a) {
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < a.rows(); ++i) {
            if (!std::isfinite(real_of(a(i, j))) || !std::isfinite(imag_of(a(i, j))))
                return false;
        }
    return true;
}

template <typename T>
void require_finite(const DenseMatrix<T>& a, const char* where) {
    if (a.rows() < 1 || a.cols() < 1)
        throw std::invalid_argument(std::string(where) + ": dimensions must be positive");
    if (!all_finite(a))
        throw std::invalid_argument(std::string(where) + ": non-finite entry in input");
}

template <typename T>
double frobenius_norm(const DenseMatrix<T>& a) {
    double s = 0.0;
    for (index_t j = 0; j < a.cols(); ++j)
        s += kernels::nrm2sq(static_cast<std::size_t>(a.rows()), a.col(j));
    return std::sqrt(s);
}

template <typename T>
DenseMatrix<T> adjoint(const DenseMatrix<T>& a) {
    DenseMatrix<T> b(a.cols(), a.rows());
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < a.rows(); ++i) b(j, i) = conj_of(a(i, j));
    return b;
}

template <typename T>
DenseMatrix<T> transpose(const DenseMatrix<T>& a) {
    DenseMatrix<T> b(a.cols(), a.rows());
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < a.rows(); ++i) b(j, i) = a(i, j);
    return b;
}

template <typename T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
    DenseMatrix<T> c(a.rows(), b.cols());
    const std::size_t m = static_cast<std::size_t>(a.rows());
    for (index_t j = 0; j < b.cols(); ++j)
        for (index_t k = 0; k < a.cols(); ++k)
            kernels::axpy(m, b(k, j), a.col(k), c.col(j));
    return c;
}

template <typename T>
DenseMatrix<T> multiply_adjoint_left(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("multiply_adjoint_left: dimension mismatch");
    DenseMatrix<T> c(a.cols(), b.cols());
    const std::size_t m = static_cast<std::size_t>(a.rows());
    for (index_t j = 0; j < b.cols(); ++j)
        for (index_t i = 0; i < a.cols(); ++i)
            c(i, j) = kernels::dot_conj(m, a.col(i), b.col(j));
    return c;
}

template <typename T>
DenseMatrix<T> multiply_adjoint_right(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("multiply_adjoint_right: dimension mismatch");
    // a * b^* = sum_k a(:,k) * conj(b(:,k))^T, accumulated column by column.
    DenseMatrix<T> c(a.rows(), b.rows());
    const std::size_t m = static_cast<std::size_t>(a.rows());
    for (index_t k = 0; k < a.cols(); ++k)
        for (index_t j = 0; j < b.rows(); ++j)
            kernels::axpy(m, conj_of(b(j, k)), a.col(k), c.col(j));
    return c;
}

template <typename T>
DenseMatrix<T> subtract(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("subtract: dimension mismatch");
    DenseMatrix<T> c = a;
    for (index_t j = 0; j < a.cols(); ++j)
        kernels::axpy(static_cast<std::size_t>(a.rows()), T{-1}, b.col(j), c.col(j));
    return c;
}

#define SPS_INSTANTIATE(T)                                                              \
    template bool all_finite<T>(const DenseMatrix<T>&);                                 \
    template void require_finite<T>(const DenseMatrix<T>&, const char*);                \
    template double frobenius_norm<T>(const DenseMatrix<T>&);                           \
    template DenseMatrix<T> adjoint<T>(const DenseMatrix<T>&);                          \
    template DenseMatrix<T> transpose<T>(const DenseMatrix<T>&);                        \
    template DenseMatrix<T> multiply<T>(const DenseMatrix<T>&, const DenseMatrix<T>&);  \
    template DenseMatrix<T> multiply_adjoint_left<T>(const DenseMatrix<T>&,             \
                                                     const DenseMatrix<T>&);            \
    template DenseMatrix<T> multiply_adjoint_right<T>(const DenseMatrix<T>&,            \
                                                      const DenseMatrix<T>&);           \
    template DenseMatrix<T> subtract<T>(const DenseMatrix<T>&, const DenseMatrix<T>&);

SPS_INSTANTIATE(double)
SPS_INSTANTIATE(std::complex<double>)

#undef SPS_INSTANTIATE

}  // namespace sps
