#include <algorithm>
#include <set>

#include "doctest.h"
#include "sps/binning.hpp"
#include "support.hpp"

using namespace sps;
using testsup::zd;

namespace {

template <typename T>
SparsityPattern full_pattern(const DenseMatrix<T>& a) {
    std::vector<char> keep(static_cast<std::size_t>(a.rows()) * a.cols(), 1);
    return SparsityPattern::from_mask_array(a.rows(), a.cols(), keep);
}

// transpose of an assignment, for the P-3 / P-4 checks
BinAssignment transpose_assignment(const BinAssignment& b) {
    BinAssignment t;
    std::vector<char> keep_t(
        static_cast<std::size_t>(b.pattern.num_rows) * b.pattern.num_cols, 0);
    for (const auto& [i, j] : b.pattern.positions)
        keep_t[static_cast<std::size_t>(j) * b.pattern.num_rows + i] = 1;
    const SparsityPattern zt =
        SparsityPattern::from_mask_array(b.pattern.num_cols, b.pattern.num_rows, keep_t);
    t.pattern = zt;
    t.real_ids.resize(b.real_ids.size());
    t.imag_ids.resize(b.imag_ids.size());
    for (std::size_t src = 0; src < b.pattern.positions.size(); ++src) {
        const auto [i, j] = b.pattern.positions[src];
        const index_t dst = zt.position_index(j, i);
        t.real_ids[static_cast<std::size_t>(dst)] = b.real_ids[src];
        if (!b.imag_ids.empty())
            t.imag_ids[static_cast<std::size_t>(dst)] = b.imag_ids[src];
    }
    t.n_bins = b.n_bins;
    return t;
}

}  // namespace

TEST_CASE("compute_bins: uniform widths with clamped top bin") {
    DenseMatrix<double> a(2, 2);
    a(0, 0) = 1.0; a(0, 1) = 2.0;
    a(1, 0) = 2.04; a(1, 1) = 100.0;
    const auto b = compute_bins(a, full_pattern(a), 50);
    CHECK(b.n_bins == 2);
    // positions row-major: (0,0) (0,1) (1,0) (1,1)
    CHECK(b.real_ids == std::vector<index_t>{1, 1, 1, 2});
}

TEST_CASE_TEMPLATE("compute_bins: max_bins 0 gives singleton bins", T, double, zd) {
    const auto a = testsup::random_matrix<T>(3, 4, 2);
    const auto z = full_pattern(a);
    const auto b = compute_bins(a, z, 0);
    CHECK(b.n_bins == (is_complex_v<T> ? 2 * z.nnz() : z.nnz()));
    for (const auto& list : b.entry_lists) CHECK(list.size() == 1);
}

TEST_CASE("compute_bins: scaled identity collapses to one bin") {
    DenseMatrix<double> a(3, 3);
    for (index_t i = 0; i < 3; ++i) a(i, i) = 2.5;
    std::vector<char> keep(9, 0);
    keep[0] = keep[4] = keep[8] = 1;
    const auto z = SparsityPattern::from_mask_array(3, 3, keep);
    const auto b = compute_bins(a, z, 8);
    CHECK(b.n_bins == 1);
    CHECK(b.real_ids == std::vector<index_t>{1, 1, 1});
}

TEST_CASE("compute_bins: exact zeros inside a supplied pattern get their own class") {
    DenseMatrix<double> a(2, 2);
    a(0, 0) = -1.0; a(1, 1) = 3.0;  // (0,1) and (1,0) stay exactly zero
    const auto b = compute_bins(a, full_pattern(a), 4);
    // classes: negative {-1}, zero {0, 0}, positive {3}
    CHECK(b.n_bins == 3);
    CHECK(b.real_ids[0] == 1);
    CHECK(b.real_ids[1] == 2);
    CHECK(b.real_ids[2] == 2);
    CHECK(b.real_ids[3] == 3);
}

TEST_CASE("compute_bins: ids are dense 1..n_bins and lists non-empty") {
    const auto a = testsup::random_matrix<zd>(5, 5, 13);
    const auto b = compute_bins(a, full_pattern(a), 6);
    std::set<index_t> used(b.real_ids.begin(), b.real_ids.end());
    used.insert(b.imag_ids.begin(), b.imag_ids.end());
    CHECK(static_cast<index_t>(used.size()) == b.n_bins);
    CHECK(*used.begin() == 1);
    CHECK(*used.rbegin() == b.n_bins);
    for (const auto& list : b.entry_lists) CHECK(!list.empty());
    // real and imaginary id ranges must not overlap
    const index_t max_real = *std::max_element(b.real_ids.begin(), b.real_ids.end());
    const index_t min_imag = *std::min_element(b.imag_ids.begin(), b.imag_ids.end());
    CHECK(min_imag > max_real);
}

TEST_CASE("compute_bins rejects negative max_bins") {
    const auto a = testsup::random_matrix<double>(2, 2, 3);
    CHECK_THROWS_AS((void)compute_bins(a, full_pattern(a), -1), std::invalid_argument);
}

TEST_CASE("bins_equivalent: reflexive and label-blind") {
    const auto a = testsup::random_matrix<double>(4, 4, 4);
    const auto b = compute_bins(a, full_pattern(a), 5);
    CHECK(bins_equivalent(b, b));

    // permuting labels keeps the partition: ids [[1,1],[2,0]] vs [[2,2],[1,0]]
    DenseMatrix<double> m(2, 2);
    m(0, 0) = 1.0; m(0, 1) = 1.0; m(1, 0) = -1.0;
    std::vector<char> keep = {1, 1, 1, 0};
    const auto z = SparsityPattern::from_mask_array(2, 2, keep);
    BinAssignment b1, b2;
    b1.pattern = z; b2.pattern = z;
    b1.real_ids = {1, 1, 2}; b1.n_bins = 2;
    b2.real_ids = {2, 2, 1}; b2.n_bins = 2;
    CHECK(bins_equivalent(b1, b2));

    BinAssignment b3 = b1;
    b3.real_ids = {1, 2, 2};
    CHECK(!bins_equivalent(b1, b3));
}

TEST_CASE("bins_equivalent throws on size mismatch") {
    const auto a = testsup::random_matrix<double>(2, 2, 5);
    const auto c = testsup::random_matrix<double>(3, 3, 6);
    const auto ba = compute_bins(a, full_pattern(a), 4);
    const auto bc = compute_bins(c, full_pattern(c), 4);
    CHECK_THROWS_AS((void)bins_equivalent(ba, bc), std::invalid_argument);
}

TEST_CASE_TEMPLATE("P-2: scaling keeps the induced partition", T, double, zd) {
    const auto a = testsup::random_matrix<T>(5, 6, 7);
    const auto z = full_pattern(a);
    const auto base = compute_bins(a, z, 7);
    for (const double alpha : {3.0, -2.0, 0.25}) {
        DenseMatrix<T> s = a;
        for (index_t j = 0; j < s.cols(); ++j)
            for (index_t i = 0; i < s.rows(); ++i) s(i, j) = s(i, j) * T{alpha};
        CHECK(bins_equivalent(compute_bins(s, z, 7), base));
    }
}

TEST_CASE("P-3: transpose of the assignment matches bins of the transpose") {
    const auto a = testsup::random_matrix<double>(5, 4, 8);
    const auto b = compute_bins(a, full_pattern(a), 6);
    const auto bt = compute_bins(transpose(a), full_pattern(transpose(a)), 6);
    CHECK(bins_equivalent(bt, transpose_assignment(b)));
}

TEST_CASE("P-4: adjoint bins are the transposed assignment, complex") {
    const auto a = testsup::random_matrix<zd>(5, 4, 9);
    const auto b = compute_bins(a, full_pattern(a), 6);
    const auto badj = compute_bins(adjoint(a), full_pattern(adjoint(a)), 6);
    CHECK(bins_equivalent(badj, transpose_assignment(b)));
}

TEST_CASE("reduction_map layouts") {
    // singleton bins: identity map
    const auto a = testsup::random_matrix<double>(2, 2, 10);
    const auto z = full_pattern(a);
    const auto singleton = compute_bins(a, z, 0);
    CHECK(reduction_map(singleton) == std::vector<index_t>{0, 1, 2, 3});

    // one shared bin: constant map
    DenseMatrix<double> c(2, 2);
    for (index_t j = 0; j < 2; ++j)
        for (index_t i = 0; i < 2; ++i) c(i, j) = 4.0;
    const auto one = compute_bins(c, z, 8);
    CHECK(reduction_map(one) == std::vector<index_t>{0, 0, 0, 0});

    // the uniform-width example above maps to (0, 0, 0, 1)
    DenseMatrix<double> u(2, 2);
    u(0, 0) = 1.0; u(0, 1) = 2.0; u(1, 0) = 2.04; u(1, 1) = 100.0;
    CHECK(reduction_map(compute_bins(u, z, 50)) == std::vector<index_t>{0, 0, 0, 1});
}
