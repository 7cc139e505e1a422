#pragma once

#include <vector>

#include "sps/dense.hpp"
#include "sps/pattern.hpp"

namespace sps {

/// Compressed sparse row matrix; entries within a row are sorted by column.
template <typename T>
struct SparseMatrixCsr {
    index_t num_rows = 0;
    index_t num_cols = 0;
    std::vector<index_t> row_offsets;  // size num_rows + 1
    std::vector<index_t> column_ids;
    std::vector<T> values;

    index_t nnz() const { return static_cast<index_t>(values.size()); }

    static SparseMatrixCsr zero(index_t m, index_t n) {
        SparseMatrixCsr x;
        x.num_rows = m;
        x.num_cols = n;
        x.row_offsets.assign(static_cast<std::size_t>(m) + 1, 0);
        return x;
    }

    /// Empty CSR shaped by a pattern; values to be filled by the caller.
    static SparseMatrixCsr from_pattern(const SparsityPattern& z) {
        SparseMatrixCsr x;
        x.num_rows = z.num_rows;
        x.num_cols = z.num_cols;
        x.row_offsets = z.row_offsets;
        x.column_ids.reserve(z.positions.size());
        for (const auto& [i, j] : z.positions) x.column_ids.push_back(j);
        x.values.assign(z.positions.size(), T{});
        return x;
    }
};

template <typename T>
DenseMatrix<T> csr_to_dense(const SparseMatrixCsr<T>& x) {
    DenseMatrix<T> a(x.num_rows, x.num_cols);
    for (index_t i = 0; i < x.num_rows; ++i)
        for (index_t t = x.row_offsets[static_cast<std::size_t>(i)];
             t < x.row_offsets[static_cast<std::size_t>(i) + 1]; ++t)
            a(i, x.column_ids[static_cast<std::size_t>(t)]) = x.values[static_cast<std::size_t>(t)];
    return a;
}

/// CSR of the nonzero entries of a dense matrix.
template <typename T>
SparseMatrixCsr<T> csr_from_dense(const DenseMatrix<T>& a) {
    SparseMatrixCsr<T> x;
    x.num_rows = a.rows();
    x.num_cols = a.cols();
    x.row_offsets.assign(static_cast<std::size_t>(a.rows()) + 1, 0);
    for (index_t i = 0; i < a.rows(); ++i) {
        x.row_offsets[static_cast<std::size_t>(i)] = static_cast<index_t>(x.values.size());
        for (index_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) != T{}) {
                x.column_ids.push_back(j);
                x.values.push_back(a(i, j));
            }
        }
    }
    x.row_offsets[static_cast<std::size_t>(a.rows())] = static_cast<index_t>(x.values.size());
    return x;
}

}  // namespace sps
