#include <random>

#include "doctest.h"
#include "sps/cholesky.hpp"
#include "sps/misfit.hpp"
#include "sps/qr.hpp"
#include "sps/solver.hpp"
#include "support.hpp"

using namespace sps;
using testsup::zd;

namespace {

template <typename T>
SparsityPattern full_pattern(index_t m, index_t n) {
    std::vector<char> keep(static_cast<std::size_t>(m) * n, 1);
    return SparsityPattern::from_mask_array(m, n, keep);
}

// J evaluated through the quadratic expansion instead of the direct formula
template <typename T>
double expanded_objective(const DenseMatrix<T>& x, const DenseMatrix<T>& a,
                          const MisfitOperator<T>& mis) {
    const double j0 = objective(DenseMatrix<T>(a.rows(), a.cols()), a, mis.pinv);
    const DenseMatrix<T> xw = multiply(x, mis.w_col);
    const DenseMatrix<T> wx = multiply(mis.w_row, x);
    double quad = 0.0, lin = 0.0;
    for (index_t j = 0; j < x.cols(); ++j)
        for (index_t i = 0; i < x.rows(); ++i) {
            quad += real_of(conj_of(x(i, j)) * (xw(i, j) + wx(i, j)));
            lin += real_of(conj_of(x(i, j)) * mis.linear_term(i, j));
        }
    return j0 + 0.5 * quad - lin;
}

}  // namespace

TEST_CASE("build_misfit: identity and diagonal") {
    const auto id = DenseMatrix<double>::identity(3);
    const auto f = factorize_with_pinv(id);
    const auto mis = build_misfit(id, f.pinv);
    CHECK(testsup::max_abs_diff(mis.w_row, id) <= 1e-14);
    CHECK(testsup::max_abs_diff(mis.w_col, id) <= 1e-14);
    DenseMatrix<double> two = id;
    two(0, 0) = two(1, 1) = two(2, 2) = 2.0;
    CHECK(testsup::max_abs_diff(mis.linear_term, two) <= 1e-14);

    DenseMatrix<double> d(2, 2);
    d(0, 0) = 2.0; d(1, 1) = 4.0;
    const auto fd = factorize_with_pinv(d);
    const auto md = build_misfit(d, fd.pinv);
    CHECK(md.w_row(0, 0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(md.w_row(1, 1) == doctest::Approx(1.0 / 16).epsilon(1e-13));
    CHECK(md.linear_term(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(md.linear_term(1, 1) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("build_misfit rejects mismatched shapes") {
    const auto a = testsup::random_matrix<double>(3, 4, 1);
    CHECK_THROWS_AS((void)build_misfit(a, DenseMatrix<double>(3, 4)), std::invalid_argument);
}

TEST_CASE_TEMPLATE("objective basics", T, double, zd) {
    const auto a = testsup::random_matrix<T>(4, 4, 2);
    const auto f = factorize_with_pinv(a);
    CHECK(objective(a, a, f.pinv) <= 1e-20);
    // X = 0 costs exactly the rank
    CHECK(objective(DenseMatrix<T>(4, 4), a, f.pinv) == doctest::Approx(4.0).epsilon(1e-10));

    const auto id = DenseMatrix<double>::identity(2);
    const auto fi = factorize_with_pinv(id);
    DenseMatrix<double> twice = id;
    twice(0, 0) = twice(1, 1) = 2.0;
    CHECK(objective(twice, id, fi.pinv) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("objective at zero equals the rank for deficient input too") {
    const auto a = testsup::random_rank_deficient<double>(5, 5, 3, 3);
    const auto f = factorize_with_pinv(a);
    CHECK(objective(DenseMatrix<double>(5, 5), a, f.pinv) ==
          doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE_TEMPLATE("expansion form equals the direct objective", T, double, zd) {
    const auto a = testsup::random_matrix<T>(4, 3, 5);
    const auto f = factorize_with_pinv(a);
    const auto mis = build_misfit(a, f.pinv);
    for (unsigned seed = 0; seed < 100; ++seed) {
        const auto x = testsup::random_matrix<T>(4, 3, 1000 + seed);
        const double direct = objective(x, a, f.pinv);
        CHECK(expanded_objective(x, a, mis) ==
              doctest::Approx(direct).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("pattern_hessian_entry: identity cases") {
    const auto id = DenseMatrix<double>::identity(2);
    const auto f = factorize_with_pinv(id);
    const auto mis = build_misfit(id, f.pinv);
    CHECK(pattern_hessian_entry({0, 0}, {0, 0}, mis) == doctest::Approx(2.0));
    CHECK(pattern_hessian_entry({0, 0}, {1, 1}, mis) == doctest::Approx(0.0));
}

TEST_CASE_TEMPLATE("pattern Hessian matches central differences", T, double, zd) {
    const auto a = testsup::random_matrix<T>(3, 3, 6);
    const auto f = factorize_with_pinv(a);
    const auto mis = build_misfit(a, f.pinv);
    const auto z = full_pattern<T>(3, 3);
    const double h = 1e-5;

    // real-form Hessian on singleton bins == pattern Hessian
    const auto singleton = compute_bins(a, z, 0);
    const auto sys = assemble_reduced(mis, singleton);
    const index_t nu = sys.hessian.rows();

    const auto eval = [&](const std::vector<double>& y) {
        return objective(csr_to_dense(expand_bins<T>(y, singleton)), a, f.pinv);
    };
    // centering the stencil on the minimizer (X = A) keeps the J values
    // O(h^2), so the second differences carry no cancellation error
    std::vector<double> y0(static_cast<std::size_t>(nu), 0.0);
    for (std::size_t t = 0; t < z.positions.size(); ++t) {
        const auto [pi, pj] = z.positions[t];
        y0[t] = real_of(a(pi, pj));
        if constexpr (is_complex_v<T>) y0[z.positions.size() + t] = imag_of(a(pi, pj));
    }

    for (index_t r = 0; r < nu; ++r) {
        for (index_t c = 0; c < nu; ++c) {
            auto ypp = y0, ypm = y0, ymp = y0, ymm = y0;
            ypp[r] += h; ypp[c] += h;
            ypm[r] += h; ypm[c] -= h;
            ymp[r] -= h; ymp[c] += h;
            ymm[r] -= h; ymm[c] -= h;
            const double fd = (eval(ypp) - eval(ypm) - eval(ymp) + eval(ymm)) / (4 * h * h);
            CHECK(sys.hessian(r, c) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE_TEMPLATE("analytic gradient matches central differences", T, double, zd) {
    const auto a = testsup::random_matrix<T>(4, 3, 7);
    const auto f = factorize_with_pinv(a);
    const auto mis = build_misfit(a, f.pinv);
    const auto z = full_pattern<T>(4, 3);
    const auto singleton = compute_bins(a, z, 0);
    const auto sys = assemble_reduced(mis, singleton);
    const index_t nu = sys.hessian.rows();

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> y(static_cast<std::size_t>(nu));
    for (auto& v : y) v = dist(rng);

    // gradient of the reduced quadratic: H y - rhs
    const auto eval = [&](const std::vector<double>& yy) {
        return objective(csr_to_dense(expand_bins<T>(yy, singleton)), a, f.pinv);
    };
    const double h = 1e-5;
    for (index_t r = 0; r < nu; ++r) {
        double hy = -sys.rhs[static_cast<std::size_t>(r)];
        for (index_t c = 0; c < nu; ++c) hy += sys.hessian(r, c) * y[static_cast<std::size_t>(c)];
        auto yp = y, ym = y;
        yp[static_cast<std::size_t>(r)] += h;
        ym[static_cast<std::size_t>(r)] -= h;
        const double fd = (eval(yp) - eval(ym)) / (2 * h);
        CHECK(hy == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("assemble_reduced: identity with singleton and shared bins") {
    const auto id = DenseMatrix<double>::identity(2);
    const auto f = factorize_with_pinv(id);
    const auto mis = build_misfit(id, f.pinv);
    std::vector<char> diag_keep = {1, 0, 0, 1};
    const auto z = SparsityPattern::from_mask_array(2, 2, diag_keep);

    const auto singleton = compute_bins(id, z, 0);
    const auto sys = assemble_reduced(mis, singleton);
    REQUIRE(sys.hessian.rows() == 2);
    CHECK(sys.hessian(0, 0) == doctest::Approx(2.0));
    CHECK(sys.hessian(1, 1) == doctest::Approx(2.0));
    CHECK(sys.hessian(0, 1) == doctest::Approx(0.0));
    CHECK(sys.rhs == std::vector<double>{2.0, 2.0});

    const auto one_bin = compute_bins(id, z, 8);  // equal values share one bin
    REQUIRE(one_bin.n_bins == 1);
    const auto sys1 = assemble_reduced(mis, one_bin);
    CHECK(sys1.hessian(0, 0) == doctest::Approx(4.0));
    CHECK(sys1.rhs == std::vector<double>{4.0});
    const auto solved = solve_spd(sys1);
    CHECK(solved.y[0] == doctest::Approx(1.0));
}

TEST_CASE_TEMPLATE("reduced objective is consistent with the full objective", T, double, zd) {
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const auto a = testsup::random_matrix<T>(5, 5, 8);
    const auto f = factorize_with_pinv(a);
    const auto mis = build_misfit(a, f.pinv);
    const auto z = lp_pattern(a, 0.8, 1.0);
    const auto bins = compute_bins(a, z, 3);
    const auto sys = assemble_reduced(mis, bins);
    const double j0 = objective(DenseMatrix<T>(5, 5), a, f.pinv);

    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> y(static_cast<std::size_t>(bins.n_bins));
        for (auto& v : y) v = dist(rng);
        double quad = 0.0;
        for (index_t r = 0; r < sys.hessian.rows(); ++r)
            for (index_t c = 0; c < sys.hessian.cols(); ++c)
                quad += y[static_cast<std::size_t>(r)] * sys.hessian(r, c) *
                        y[static_cast<std::size_t>(c)];
        double lin = 0.0;
        for (std::size_t t = 0; t < y.size(); ++t) lin += sys.rhs[t] * y[t];
        const double reduced = 0.5 * quad - lin + j0;
        const double direct = objective(expand_bins<T>(y, bins), a, f.pinv);
        CHECK(reduced == doctest::Approx(direct).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE_TEMPLATE("pattern_hessian_entry is conjugate-symmetric", T, double, zd) {
    const auto a = testsup::random_matrix<T>(5, 4, 31);
    const auto f = factorize_with_pinv(a);
    const auto mis = build_misfit(a, f.pinv);
    const auto z = lp_pattern(a, 0.8, 1.0);
    for (index_t t1 = 0; t1 < z.nnz(); ++t1)
        for (index_t t2 = 0; t2 < z.nnz(); ++t2) {
            const T h12 = pattern_hessian_entry(z.positions[static_cast<std::size_t>(t1)],
                                                z.positions[static_cast<std::size_t>(t2)], mis);
            const T h21 = pattern_hessian_entry(z.positions[static_cast<std::size_t>(t2)],
                                                z.positions[static_cast<std::size_t>(t1)], mis);
            CHECK(h12 == conj_of(h21));  // exact after kernel symmetrization
        }
}

TEST_CASE_TEMPLATE("misfit kernels are Hermitian positive semidefinite", T, double, zd) {
    const auto a = testsup::random_rank_deficient<T>(6, 5, 3, 33);
    const auto f = factorize_with_pinv(a);
    const auto mis = build_misfit(a, f.pinv);
    for (const DenseMatrix<T>* w : {&mis.w_row, &mis.w_col}) {
        CHECK(frobenius_norm(subtract(adjoint(*w), *w)) == 0.0);
        // eigenvalue floor: shifted Cholesky must succeed
        DenseMatrix<T> shifted = *w;
        const double shift = 1e-12 * std::max(1.0, frobenius_norm(*w));
        for (index_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += T{shift};
        CHECK(cholesky_in_place(shifted));
    }
}

TEST_CASE_TEMPLATE("reduced Hessian is exactly symmetric and SPD for full rank", T, double, zd) {
    const auto a = testsup::random_matrix<T>(6, 5, 9);
    const auto f = factorize_with_pinv(a);
    const auto mis = build_misfit(a, f.pinv);
    const auto z = lp_pattern(a, 0.7, 1.0);
    const auto bins = compute_bins(a, z, 5);
    const auto sys = assemble_reduced(mis, bins);
    for (index_t i = 0; i < sys.hessian.rows(); ++i)
        for (index_t j = 0; j < sys.hessian.cols(); ++j)
            CHECK(sys.hessian(i, j) == sys.hessian(j, i));  // bitwise

    DenseMatrix<double> h = sys.hessian;
    CHECK(cholesky_in_place(h));
}
