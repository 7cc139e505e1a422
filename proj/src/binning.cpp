#include "sps/binning.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sps {

namespace {

// Assigns dense ids (1-based, starting at base + 1) to one scalar part.
// Values are split into negative / zero / positive classes, each class gets
// uniform-width raw bins, and the non-empty raw bins are renumbered densely
// in class order.
index_t bin_one_part(const std::vector<double>& values, index_t max_bins, index_t base,
                     std::vector<index_t>& ids) {
    const std::size_t cnt = values.size();
    ids.assign(cnt, 0);
    if (cnt == 0) return base;

    if (max_bins == 0) {
        for (std::size_t a = 0; a < cnt; ++a) ids[a] = base + static_cast<index_t>(a) + 1;
        return base + static_cast<index_t>(cnt);
    }

    index_t next = base;
    for (int cls = 0; cls < 3; ++cls) {  // negative, zero, positive
        std::vector<std::size_t> members;
        for (std::size_t a = 0; a < cnt; ++a) {
            const double v = values[a];
            const bool in_class = (cls == 0 && v < 0.0) || (cls == 1 && v == 0.0) ||
                                  (cls == 2 && v > 0.0);
            if (in_class) members.push_back(a);
        }
        if (members.empty()) continue;

        double lo = values[members[0]], hi = values[members[0]];
        for (const std::size_t a : members) {
            lo = std::min(lo, values[a]);
            hi = std::max(hi, values[a]);
        }

        std::vector<index_t> raw(members.size());
        if (lo == hi) {
            std::fill(raw.begin(), raw.end(), 1);
        } else {
            const double h = (hi - lo) / static_cast<double>(max_bins);
            for (std::size_t t = 0; t < members.size(); ++t) {
                const index_t id =
                    static_cast<index_t>(std::floor((values[members[t]] - lo) / h)) + 1;
                raw[t] = std::min(id, max_bins);
            }
        }

        // dense renumbering of the non-empty raw bins
        std::vector<index_t> used = raw;
        std::sort(used.begin(), used.end());
        used.erase(std::unique(used.begin(), used.end()), used.end());
        for (std::size_t t = 0; t < members.size(); ++t) {
            const index_t dense = static_cast<index_t>(
                std::lower_bound(used.begin(), used.end(), raw[t]) - used.begin());
            ids[members[t]] = next + dense + 1;
        }
        next += static_cast<index_t>(used.size());
    }
    return next;
}

// Canonical relabeling by first occurrence over the full grid (0 kept as 0),
// so equal partitions compare equal element-wise.
std::vector<index_t> canonicalize(const SparsityPattern& pattern,
                                  const std::vector<index_t>& ids, index_t m, index_t n) {
    std::vector<index_t> grid(static_cast<std::size_t>(m) * n, 0);
    for (std::size_t a = 0; a < pattern.positions.size(); ++a) {
        const auto [i, j] = pattern.positions[a];
        grid[static_cast<std::size_t>(i) * n + j] = ids.empty() ? 0 : ids[a];
    }
    std::map<index_t, index_t> relabel;
    index_t next = 0;
    for (auto& g : grid) {
        if (g == 0) continue;
        auto [it, inserted] = relabel.try_emplace(g, next + 1);
        if (inserted) ++next;
        g = it->second;
    }
    return grid;
}

}  // namespace

template <typename T>
BinAssignment compute_bins(const DenseMatrix<T>& a, const SparsityPattern& pattern,
                           index_t max_bins) {
    if (max_bins < 0) throw std::invalid_argument("compute_bins: max_bins must be >= 0");
    if (pattern.num_rows != a.rows() || pattern.num_cols != a.cols())
        throw std::invalid_argument("compute_bins: pattern does not match matrix");
    require_finite(a, "compute_bins");

    BinAssignment b;
    b.pattern = pattern;
    const std::size_t nnz = pattern.positions.size();

    std::vector<double> part(nnz);
    for (std::size_t t = 0; t < nnz; ++t)
        part[t] = real_of(a(pattern.positions[t].first, pattern.positions[t].second));
    index_t base = bin_one_part(part, max_bins, 0, b.real_ids);

    if constexpr (is_complex_v<T>) {
        for (std::size_t t = 0; t < nnz; ++t)
            part[t] = imag_of(a(pattern.positions[t].first, pattern.positions[t].second));
        base = bin_one_part(part, max_bins, base, b.imag_ids);
    }
    b.n_bins = base;

    b.entry_lists.assign(static_cast<std::size_t>(b.n_bins), {});
    for (std::size_t t = 0; t < nnz; ++t)
        b.entry_lists[static_cast<std::size_t>(b.real_ids[t] - 1)].push_back(
            static_cast<index_t>(t));
    for (std::size_t t = 0; t < b.imag_ids.size(); ++t)
        b.entry_lists[static_cast<std::size_t>(b.imag_ids[t] - 1)].push_back(
            static_cast<index_t>(t));
    return b;
}

bool bins_equivalent(const BinAssignment& b1, const BinAssignment& b2) {
    if (b1.pattern.num_rows != b2.pattern.num_rows ||
        b1.pattern.num_cols != b2.pattern.num_cols)
        throw std::invalid_argument("bins_equivalent: size mismatch");
    const index_t m = b1.pattern.num_rows;
    const index_t n = b1.pattern.num_cols;
    if (b1.has_imag() != b2.has_imag()) return false;
    if (canonicalize(b1.pattern, b1.real_ids, m, n) !=
        canonicalize(b2.pattern, b2.real_ids, m, n))
        return false;
    if (b1.has_imag() &&
        canonicalize(b1.pattern, b1.imag_ids, m, n) !=
            canonicalize(b2.pattern, b2.imag_ids, m, n))
        return false;
    return true;
}

std::vector<index_t> reduction_map(const BinAssignment& b) {
    const std::size_t nnz = b.real_ids.size();
    std::vector<index_t> map(nnz + b.imag_ids.size());
    for (std::size_t t = 0; t < nnz; ++t) map[t] = b.real_ids[t] - 1;
    for (std::size_t t = 0; t < b.imag_ids.size(); ++t) map[nnz + t] = b.imag_ids[t] - 1;
    return map;
}

template BinAssignment compute_bins<double>(const DenseMatrix<double>&,
                                            const SparsityPattern&, index_t);
template BinAssignment compute_bins<std::complex<double>>(
    const DenseMatrix<std::complex<double>>&, const SparsityPattern&, index_t);

}  // namespace sps
