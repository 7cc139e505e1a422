#pragma once

#include <utility>
#include <vector>

#include "sps/dense.hpp"

namespace sps {

/// Set of retained (row, col) positions, stored row-major sorted with no
/// duplicates, plus row-wise and column-wise traversal lists.
struct SparsityPattern {
    index_t num_rows = 0;
    index_t num_cols = 0;
    std::vector<std::pair<index_t, index_t>> positions;
    std::vector<index_t> row_offsets;              // size num_rows + 1, into positions
    std::vector<std::vector<index_t>> row_cols;    // per row, sorted column ids
    std::vector<std::vector<index_t>> col_rows;    // per col, sorted row ids

    index_t nnz() const { return static_cast<index_t>(positions.size()); }

    /// Unknown index of position (i, j); positions are numbered row-major.
    index_t position_index(index_t i, index_t j) const;

    static SparsityPattern from_mask_array(index_t num_rows, index_t num_cols,
                                           const std::vector<char>& keep);
};

/// Row/column L_p-norm rule: per line, keep the shortest descending-magnitude
/// prefix whose sum of |v|^p reaches ratio^p times the line total, extend by
/// magnitude ties, and take the union of the row and column picks. Exact
/// zeros are never kept. p = 0 keeps ceil(ratio * line nnz) largest entries
/// plus ties; p = inf keeps each line maximum plus ties for any ratio > 0.
template <typename T>
SparsityPattern lp_pattern(const DenseMatrix<T>& a, double ratio, double p);

/// Positions of the ones in a 0/1 mask; anything else is rejected.
template <typename T>
SparsityPattern pattern_from_mask(const DenseMatrix<T>& mask);

}  // namespace sps
