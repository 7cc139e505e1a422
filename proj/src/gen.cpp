#include "sps/gen.hpp"

#include <cmath>
#include <random>

namespace sps {

namespace {

DenseMatrix<double> paper40(index_t n) {
    DenseMatrix<double> a(n, n);
    const double root = std::pow(3.0, 0.25);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i)
            a(i, j) = std::pow(std::cos(root * std::sqrt(static_cast<double>(i + 1)) *
                                        static_cast<double>(j + 1)),
                               5.0);
    return a;
}

DenseMatrix<double> rank_deficient(index_t n, index_t rank, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    DenseMatrix<double> b(n, rank), c(rank, n);
    for (index_t j = 0; j < rank; ++j)
        for (index_t i = 0; i < n; ++i) b(i, j) = dist(rng);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < rank; ++i) c(i, j) = dist(rng);
    return multiply(b, c);
}

DenseMatrix<std::complex<double>> random_complex(index_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    DenseMatrix<std::complex<double>> b(n, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < n; ++i) {
            const double re = dist(rng);
            const double im = dist(rng);
            b(i, j) = {re, im};
        }
    return b;
}

}  // namespace

DenseVariant gen_test_matrix(const std::string& kind, index_t n, index_t rank, unsigned seed) {
    if (n < 1) throw std::invalid_argument("gen_test_matrix: n must be >= 1");
    if (kind == "paper40") return paper40(n);
    if (kind == "rankdef") {
        index_t r = rank < 0 ? std::max<index_t>(1, n - 1) : rank;
        if (r < 1 || r > n) throw std::invalid_argument("gen_test_matrix: rank out of range");
        return rank_deficient(n, r, seed);
    }
    if (kind == "hermitian") {
        DenseMatrix<std::complex<double>> b = random_complex(n, seed);
        DenseMatrix<std::complex<double>> a(n, n);
        for (index_t j = 0; j < n; ++j)
            for (index_t i = 0; i < n; ++i) a(i, j) = b(i, j) + std::conj(b(j, i));
        return a;
    }
    if (kind == "complexsym") {
        DenseMatrix<std::complex<double>> b = random_complex(n, seed);
        DenseMatrix<std::complex<double>> a(n, n);
        for (index_t j = 0; j < n; ++j)
            for (index_t i = 0; i < n; ++i) a(i, j) = b(i, j) + b(j, i);
        return a;
    }
    throw std::invalid_argument("gen_test_matrix: unknown kind '" + kind + "'");
}

}  // namespace sps
