#include "sps/misfit.hpp"

#include "sps/kernels.hpp"

namespace sps {

namespace {

// Exact Hermitian symmetrization so conjugate pairs are stored bit-exact;
// the symmetric assembly below relies on it.
template <typename T>
void hermitianize(DenseMatrix<T>& w) {
    for (index_t j = 0; j < w.cols(); ++j) {
        for (index_t i = 0; i < j; ++i) {
            const T v = (w(i, j) + conj_of(w(j, i))) * T{0.5};
            w(i, j) = v;
            w(j, i) = conj_of(v);
        }
        w(j, j) = T{real_of(w(j, j))};
    }
}

}  // namespace

template <typename T>
MisfitOperator<T> build_misfit(const DenseMatrix<T>& a, const DenseMatrix<T>& pinv) {
    if (pinv.rows() != a.cols() || pinv.cols() != a.rows())
        throw std::invalid_argument("build_misfit: pinv shape does not match matrix");
    MisfitOperator<T> mis;
    mis.pinv = pinv;
    mis.w_row = multiply_adjoint_left(pinv, pinv);    // A^+* A^+, m x m
    mis.w_col = multiply_adjoint_right(pinv, pinv);   // A^+ A^+*, n x n
    hermitianize(mis.w_row);
    hermitianize(mis.w_col);
    DenseMatrix<T> lin = multiply(a, mis.w_col);
    const DenseMatrix<T> rw = multiply(mis.w_row, a);
    for (index_t j = 0; j < lin.cols(); ++j)
        kernels::axpy(static_cast<std::size_t>(lin.rows()), T{1}, rw.col(j), lin.col(j));
    mis.linear_term = std::move(lin);
    return mis;
}

template <typename T>
double objective(const DenseMatrix<T>& x, const DenseMatrix<T>& a,
                 const DenseMatrix<T>& pinv) {
    if (x.rows() != a.rows() || x.cols() != a.cols())
        throw std::invalid_argument("objective: shape mismatch");
    const DenseMatrix<T> d = subtract(x, a);
    const double t1 = frobenius_norm(multiply(d, pinv));
    const double t2 = frobenius_norm(multiply(pinv, d));
    return 0.5 * t1 * t1 + 0.5 * t2 * t2;
}

template <typename T>
double objective(const SparseMatrixCsr<T>& x, const DenseMatrix<T>& a,
                 const DenseMatrix<T>& pinv) {
    return objective(csr_to_dense(x), a, pinv);
}

template <typename T>
T pattern_hessian_entry(std::pair<index_t, index_t> pos1, std::pair<index_t, index_t> pos2,
                        const MisfitOperator<T>& mis) {
    T v{};
    if (pos1.first == pos2.first) v += mis.w_col(pos2.second, pos1.second);
    if (pos1.second == pos2.second) v += mis.w_row(pos1.first, pos2.first);
    return v;
}

template <typename T>
ReducedSystem assemble_reduced(const MisfitOperator<T>& mis, const BinAssignment& bins) {
    const SparsityPattern& z = bins.pattern;
    const index_t nb = bins.n_bins;
    ReducedSystem sys;
    sys.bins = bins;
    sys.hessian = DenseMatrix<double>(nb, nb);
    sys.rhs.assign(static_cast<std::size_t>(nb), 0.0);
    if (nb == 0) return sys;

    const bool cplx = is_complex_v<T>;
    DenseMatrix<double>& h = sys.hessian;

    // rb/ib: bin index of the real/imaginary coordinate of each position
    const std::vector<index_t>& rids = bins.real_ids;
    const std::vector<index_t>& iids = bins.imag_ids;

    for (std::size_t t = 0; t < z.positions.size(); ++t) {
        const auto [i, j] = z.positions[t];
        sys.rhs[static_cast<std::size_t>(rids[t] - 1)] += real_of(mis.linear_term(i, j));
        if (cplx)
            sys.rhs[static_cast<std::size_t>(iids[t] - 1)] += imag_of(mis.linear_term(i, j));
    }

    // One canonical visit per unordered coordinate pair, mirrored into both
    // Hessian cells so the assembled matrix is symmetric to the last bit.
    const auto accumulate = [&](index_t p1, index_t p2, T v) {
        const index_t r1 = rids[static_cast<std::size_t>(p1)] - 1;
        const index_t r2 = rids[static_cast<std::size_t>(p2)] - 1;
        const double re = real_of(v);
        h(r1, r2) += re;
        if (p1 != p2) h(r2, r1) += re;
        if (cplx) {
            const index_t i1 = iids[static_cast<std::size_t>(p1)] - 1;
            const index_t i2 = iids[static_cast<std::size_t>(p2)] - 1;
            const double im = imag_of(v);
            h(i1, i2) += re;
            h(r1, i2) += -im;
            h(i1, r2) += im;
            if (p1 != p2) {
                h(i2, i1) += re;
                h(i2, r1) += -im;
                h(r2, i1) += im;
            }
        }
    };

    for (index_t i = 0; i < z.num_rows; ++i) {
        const auto& cols = z.row_cols[static_cast<std::size_t>(i)];
        const index_t off = z.row_offsets[static_cast<std::size_t>(i)];
        for (std::size_t t1 = 0; t1 < cols.size(); ++t1)
            for (std::size_t t2 = t1; t2 < cols.size(); ++t2)
                accumulate(off + static_cast<index_t>(t1), off + static_cast<index_t>(t2),
                           mis.w_col(cols[t2], cols[t1]));
    }
    for (index_t j = 0; j < z.num_cols; ++j) {
        const auto& rows = z.col_rows[static_cast<std::size_t>(j)];
        for (std::size_t t1 = 0; t1 < rows.size(); ++t1) {
            const index_t p1 = z.position_index(rows[t1], j);
            for (std::size_t t2 = t1; t2 < rows.size(); ++t2) {
                const index_t p2 = z.position_index(rows[t2], j);
                accumulate(p1, p2, mis.w_row(rows[t1], rows[t2]));
            }
        }
    }
    return sys;
}

#define SPS_INSTANTIATE(T)                                                              \
    template MisfitOperator<T> build_misfit<T>(const DenseMatrix<T>&,                   \
                                               const DenseMatrix<T>&);                  \
    template double objective<T>(const DenseMatrix<T>&, const DenseMatrix<T>&,          \
                                 const DenseMatrix<T>&);                                \
    template double objective<T>(const SparseMatrixCsr<T>&, const DenseMatrix<T>&,      \
                                 const DenseMatrix<T>&);                                \
    template T pattern_hessian_entry<T>(std::pair<index_t, index_t>,                    \
                                        std::pair<index_t, index_t>,                    \
                                        const MisfitOperator<T>&);                      \
    template ReducedSystem assemble_reduced<T>(const MisfitOperator<T>&,                \
                                               const BinAssignment&);

SPS_INSTANTIATE(double)
SPS_INSTANTIATE(std::complex<double>)

#undef SPS_INSTANTIATE

}  // namespace sps
