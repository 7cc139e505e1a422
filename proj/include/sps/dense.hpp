#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sps {

using index_t = int;

template <typename T>
struct scalar_traits {
    using real_type = T;
    static constexpr bool is_complex = false;
};

template <typename R>
struct scalar_traits<std::complex<R>> {
    using real_type = R;
    static constexpr bool is_complex = true;
};

template <typename T>
using real_t = typename scalar_traits<T>::real_type;

template <typename T>
inline constexpr bool is_complex_v = scalar_traits<T>::is_complex;

inline double conj_of(double x) { return x; }
inline std::complex<double> conj_of(const std::complex<double>& x) { return std::conj(x); }

inline double real_of(double x) { return x; }
inline double real_of(const std::complex<double>& x) { return x.real(); }
inline double imag_of(double) { return 0.0; }
inline double imag_of(const std::complex<double>& x) { return x.imag(); }

/// Dense matrix stored column-by-column with an explicit leading dimension,
/// the same layout BLAS and LAPACK use.
template <typename T>
class DenseMatrix {
  public:
    DenseMatrix() = default;

    DenseMatrix(index_t num_rows, index_t num_cols)
        : m_(num_rows), n_(num_cols), ld_(num_rows),
          v_(static_cast<std::size_t>(num_rows) * num_cols, T{}) {}

    DenseMatrix(index_t num_rows, index_t num_cols, index_t leading_dim)
        : m_(num_rows), n_(num_cols), ld_(leading_dim),
          v_(static_cast<std::size_t>(leading_dim) * num_cols, T{}) {
        if (leading_dim < num_rows)
            throw std::invalid_argument("DenseMatrix: leading_dim < num_rows");
    }

    /// Wrap an external column-oriented buffer (copies the data).
    static DenseMatrix from_columns(index_t num_rows, index_t num_cols,
                                    const T* col_values, index_t leading_dim) {
        if (num_rows < 1 || num_cols < 1)
            throw std::invalid_argument("DenseMatrix: dimensions must be positive");
        if (leading_dim < num_rows)
            throw std::invalid_argument("DenseMatrix: leading_dim < num_rows");
        if (col_values == nullptr)
            throw std::invalid_argument("DenseMatrix: null values");
        DenseMatrix a(num_rows, num_cols);
        for (index_t j = 0; j < num_cols; ++j)
            for (index_t i = 0; i < num_rows; ++i)
                a(i, j) = col_values[static_cast<std::size_t>(j) * leading_dim + i];
        return a;
    }

    index_t rows() const { return m_; }
    index_t cols() const { return n_; }
    index_t leading_dim() const { return ld_; }

    T& operator()(index_t i, index_t j) {
        return v_[static_cast<std::size_t>(j) * ld_ + i];
    }
    const T& operator()(index_t i, index_t j) const {
        return v_[static_cast<std::size_t>(j) * ld_ + i];
    }

    T* col(index_t j) { return v_.data() + static_cast<std::size_t>(j) * ld_; }
    const T* col(index_t j) const { return v_.data() + static_cast<std::size_t>(j) * ld_; }

    T* data() { return v_.data(); }
    const T* data() const { return v_.data(); }

    static DenseMatrix identity(index_t n) {
        DenseMatrix a(n, n);
        for (index_t i = 0; i < n; ++i) a(i, i) = T{1};
        return a;
    }

  private:
    index_t m_ = 0;
    index_t n_ = 0;
    index_t ld_ = 0;
    std::vector<T> v_;
};

// Small dense helpers shared by the factorization and misfit code.
// All products are formed column-by-column so the inner loops run over
// contiguous memory and can use the vector kernels.

template <typename T>
bool all_finite(const DenseMatrix<T>& a);

template <typename T>
void require_finite(const DenseMatrix<T>& a, const char* where);

template <typename T>
double frobenius_norm(const DenseMatrix<T>& a);

template <typename T>
DenseMatrix<T> adjoint(const DenseMatrix<T>& a);

template <typename T>
DenseMatrix<T> transpose(const DenseMatrix<T>& a);

/// c = a * b
template <typename T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b);

/// c = a^* * b
template <typename T>
DenseMatrix<T> multiply_adjoint_left(const DenseMatrix<T>& a, const DenseMatrix<T>& b);

/// c = a * b^*
template <typename T>
DenseMatrix<T> multiply_adjoint_right(const DenseMatrix<T>& a, const DenseMatrix<T>& b);

template <typename T>
DenseMatrix<T> subtract(const DenseMatrix<T>& a, const DenseMatrix<T>& b);

}  // namespace sps
