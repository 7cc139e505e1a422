#pragma once

#include <vector>

#include "sps/dense.hpp"
#include "sps/pattern.hpp"

namespace sps {

/// Bin identifiers for every pattern position: one id per position for real
/// input, one per real and one per imaginary part for complex input. Ids are
/// dense in 1..n_bins; real-part and imaginary-part ranges never overlap.
/// Positions outside the pattern have no id (0 by convention).
struct BinAssignment {
    SparsityPattern pattern;
    std::vector<index_t> real_ids;            // per position, 1-based
    std::vector<index_t> imag_ids;            // empty for real input
    index_t n_bins = 0;
    std::vector<std::vector<index_t>> entry_lists;  // per bin: member position indices

    bool has_imag() const { return !imag_ids.empty(); }
};

/// Uniform-width binning per sign class (negative, zero, positive) per
/// scalar part, densely renumbered over non-empty bins. max_bins == 0 gives
/// every entry (and part) its own bin.
template <typename T>
BinAssignment compute_bins(const DenseMatrix<T>& a, const SparsityPattern& pattern,
                           index_t max_bins);

/// True iff the two assignments induce identical partitions of the matrix
/// positions, per part; bin labels themselves do not matter.
bool bins_equivalent(const BinAssignment& b1, const BinAssignment& b2);

/// Bin index (0-based) of every real unknown coordinate. Real input:
/// coordinate a is position a. Complex input: coordinates 0..nnz-1 are the
/// real parts, nnz..2*nnz-1 the imaginary parts.
std::vector<index_t> reduction_map(const BinAssignment& b);

}  // namespace sps
