#include "sps/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sps {

index_t SparsityPattern::position_index(index_t i, index_t j) const {
    const auto& cols = row_cols[static_cast<std::size_t>(i)];
    const auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j)
        throw std::invalid_argument("SparsityPattern: position not in pattern");
    return row_offsets[static_cast<std::size_t>(i)] +
           static_cast<index_t>(it - cols.begin());
}

SparsityPattern SparsityPattern::from_mask_array(index_t num_rows, index_t num_cols,
                                                 const std::vector<char>& keep) {
    SparsityPattern z;
    z.num_rows = num_rows;
    z.num_cols = num_cols;
    z.row_cols.resize(static_cast<std::size_t>(num_rows));
    z.col_rows.resize(static_cast<std::size_t>(num_cols));
    z.row_offsets.assign(static_cast<std::size_t>(num_rows) + 1, 0);
    for (index_t i = 0; i < num_rows; ++i) {
        z.row_offsets[static_cast<std::size_t>(i)] = static_cast<index_t>(z.positions.size());
        for (index_t j = 0; j < num_cols; ++j) {
            if (keep[static_cast<std::size_t>(i) * num_cols + j]) {
                z.positions.emplace_back(i, j);
                z.row_cols[static_cast<std::size_t>(i)].push_back(j);
                z.col_rows[static_cast<std::size_t>(j)].push_back(i);
            }
        }
    }
    z.row_offsets[static_cast<std::size_t>(num_rows)] = static_cast<index_t>(z.positions.size());
    return z;
}

namespace {

// Marks the kept indices of one row or column. Magnitudes are normalized by
// the line maximum so large p does not overflow pow().
void mark_line(const std::vector<double>& mags, double ratio, double p,
               std::vector<index_t>& scratch, std::vector<char>& keep, std::size_t stride,
               std::size_t base) {
    scratch.clear();
    double maxmag = 0.0;
    for (index_t k = 0; k < static_cast<index_t>(mags.size()); ++k) {
        if (mags[static_cast<std::size_t>(k)] != 0.0) {
            scratch.push_back(k);
            maxmag = std::max(maxmag, mags[static_cast<std::size_t>(k)]);
        }
    }
    if (scratch.empty() || ratio == 0.0) return;

    std::sort(scratch.begin(), scratch.end(), [&](index_t x, index_t y) {
        const double mx = mags[static_cast<std::size_t>(x)];
        const double my = mags[static_cast<std::size_t>(y)];
        return mx != my ? mx > my : x < y;
    });

    std::size_t kept = 0;
    const std::size_t cnt = scratch.size();
    if (std::isinf(p)) {
        kept = 1;
    } else if (p == 0.0) {
        kept = static_cast<std::size_t>(
            std::ceil(ratio * static_cast<double>(cnt) - 1e-12));
        kept = std::min(std::max<std::size_t>(kept, 1), cnt);
    } else {
        double total = 0.0;
        for (const index_t k : scratch)
            total += std::pow(mags[static_cast<std::size_t>(k)] / maxmag, p);
        const double thr = std::pow(ratio, p) * total;
        double acc = 0.0;
        while (kept < cnt && acc < thr) {
            acc += std::pow(mags[static_cast<std::size_t>(scratch[kept])] / maxmag, p);
            ++kept;
        }
        kept = std::max<std::size_t>(kept, 1);
    }
    // extend with exact-magnitude ties of the last kept entry
    const double last = mags[static_cast<std::size_t>(scratch[kept - 1])];
    while (kept < cnt && mags[static_cast<std::size_t>(scratch[kept])] == last) ++kept;

    for (std::size_t t = 0; t < kept; ++t)
        keep[base + static_cast<std::size_t>(scratch[t]) * stride] = 1;
}

}  // namespace

template <typename T>
SparsityPattern lp_pattern(const DenseMatrix<T>& a, double ratio, double p) {
    require_finite(a, "lp_pattern");
    if (!(ratio >= 0.0 && ratio <= 1.0))
        throw std::invalid_argument("lp_pattern: ratio must be in [0,1]");
    if (std::isnan(p) || p < 0.0)
        throw std::invalid_argument("lp_pattern: p must be in [0,inf]");

    const index_t m = a.rows();
    const index_t n = a.cols();
    std::vector<char> keep(static_cast<std::size_t>(m) * n, 0);
    std::vector<index_t> scratch;
    std::vector<double> mags;

    for (index_t i = 0; i < m; ++i) {
        mags.resize(static_cast<std::size_t>(n));
        for (index_t j = 0; j < n; ++j) mags[static_cast<std::size_t>(j)] = std::abs(a(i, j));
        mark_line(mags, ratio, p, scratch, keep, 1, static_cast<std::size_t>(i) * n);
    }
    for (index_t j = 0; j < n; ++j) {
        mags.resize(static_cast<std::size_t>(m));
        for (index_t i = 0; i < m; ++i) mags[static_cast<std::size_t>(i)] = std::abs(a(i, j));
        mark_line(mags, ratio, p, scratch, keep, static_cast<std::size_t>(n),
                  static_cast<std::size_t>(j));
    }
    return SparsityPattern::from_mask_array(m, n, keep);
}

template <typename T>
SparsityPattern pattern_from_mask(const DenseMatrix<T>& mask) {
    require_finite(mask, "pattern_from_mask");
    const index_t m = mask.rows();
    const index_t n = mask.cols();
    std::vector<char> keep(static_cast<std::size_t>(m) * n, 0);
    for (index_t i = 0; i < m; ++i)
        for (index_t j = 0; j < n; ++j) {
            const T v = mask(i, j);
            if (v == T{1})
                keep[static_cast<std::size_t>(i) * n + j] = 1;
            else if (v != T{0})
                throw std::invalid_argument("pattern_from_mask: entries must be 0 or 1");
        }
    return SparsityPattern::from_mask_array(m, n, keep);
}

template SparsityPattern lp_pattern<double>(const DenseMatrix<double>&, double, double);
template SparsityPattern lp_pattern<std::complex<double>>(
    const DenseMatrix<std::complex<double>>&, double, double);
template SparsityPattern pattern_from_mask<double>(const DenseMatrix<double>&);
template SparsityPattern pattern_from_mask<std::complex<double>>(
    const DenseMatrix<std::complex<double>>&);

}  // namespace sps
