#include "sps/solver.hpp"

#include <algorithm>
#include <cmath>

#include "sps/cholesky.hpp"
#include "sps/kernels.hpp"
#include "sps/qr.hpp"

namespace sps {

SpdSolveResult solve_spd(const ReducedSystem& sys) {
    const index_t n = sys.hessian.rows();
    SpdSolveResult out;
    out.y.assign(static_cast<std::size_t>(n), 0.0);
    if (n == 0) return out;

    double trace = 0.0;
    for (index_t i = 0; i < n; ++i) trace += sys.hessian(i, i);
    double bnorm2 = kernels::nrm2sq(static_cast<std::size_t>(n), sys.rhs.data());

    DenseMatrix<double> l = sys.hessian;
    if (!cholesky_in_place(l)) {
        if (trace == 0.0 && bnorm2 == 0.0) return out;  // J is constant; zero minimizes
        const double ridge = 1e-12 * trace / static_cast<double>(n);
        l = sys.hessian;
        for (index_t i = 0; i < n; ++i) l(i, i) += ridge;
        if (!cholesky_in_place(l))
            throw std::runtime_error("solve_spd: singular reduced system");
        out.ridge_used = true;
    }

    DenseMatrix<double> b(n, 1);
    for (index_t i = 0; i < n; ++i) b(i, 0) = sys.rhs[static_cast<std::size_t>(i)];
    solve_lower(l, b);
    solve_lower_adjoint(l, b);
    for (index_t i = 0; i < n; ++i) out.y[static_cast<std::size_t>(i)] = b(i, 0);
    return out;
}

template <typename T>
SparseMatrixCsr<T> expand_bins(const std::vector<double>& y, const BinAssignment& bins) {
    if (static_cast<index_t>(y.size()) != bins.n_bins)
        throw std::invalid_argument("expand_bins: vector length != n_bins");
    SparseMatrixCsr<T> x = SparseMatrixCsr<T>::from_pattern(bins.pattern);
    for (std::size_t t = 0; t < bins.real_ids.size(); ++t) {
        const double re = y[static_cast<std::size_t>(bins.real_ids[t] - 1)];
        if constexpr (is_complex_v<T>) {
            const double im = y[static_cast<std::size_t>(bins.imag_ids[t] - 1)];
            x.values[t] = T{re, im};
        } else {
            x.values[t] = re;
        }
    }
    return x;
}

namespace {

// lambda = (mu, nu) packed as one vector: mu(i, c) for the row constraints,
// then nu(j, c) for the column constraints.
template <typename T>
struct ConstraintWork {
    const ConstraintOperator<T>& c;
    index_t m, n, kr, kl;

    explicit ConstraintWork(const ConstraintOperator<T>& cc)
        : c(cc), m(cc.pattern.num_rows), n(cc.pattern.num_cols),
          kr(cc.right_null.cols()), kl(cc.left_null.cols()) {}

    std::size_t lambda_size() const {
        return static_cast<std::size_t>(m) * kr + static_cast<std::size_t>(kl) * n;
    }

    // out = C x (x given on pattern coordinates)
    void apply(const std::vector<T>& x, std::vector<T>& out) const {
        out.assign(lambda_size(), T{});
        const auto& pos = c.pattern.positions;
        for (std::size_t t = 0; t < pos.size(); ++t) {
            const auto [i, j] = pos[t];
            const T v = x[t];
            for (index_t cc = 0; cc < kr; ++cc)
                out[static_cast<std::size_t>(i) * kr + cc] += v * c.right_null(j, cc);
            for (index_t cc = 0; cc < kl; ++cc)
                out[static_cast<std::size_t>(m) * kr + static_cast<std::size_t>(j) * kl + cc] +=
                    conj_of(c.left_null(i, cc)) * v;
        }
    }

    // out = C^* lambda
    void apply_adjoint(const std::vector<T>& lam, std::vector<T>& out) const {
        const auto& pos = c.pattern.positions;
        out.assign(pos.size(), T{});
        for (std::size_t t = 0; t < pos.size(); ++t) {
            const auto [i, j] = pos[t];
            T s{};
            for (index_t cc = 0; cc < kr; ++cc)
                s += lam[static_cast<std::size_t>(i) * kr + cc] * conj_of(c.right_null(j, cc));
            for (index_t cc = 0; cc < kl; ++cc)
                s += c.left_null(i, cc) *
                     lam[static_cast<std::size_t>(m) * kr + static_cast<std::size_t>(j) * kl + cc];
            out[t] = s;
        }
    }
};

template <typename T>
double re_inner(const std::vector<T>& x, const std::vector<T>& y) {
    return real_of(kernels::dot_conj(x.size(), x.data(), y.data()));
}

}  // namespace

template <typename T>
ProjectionResult<T> impose_nullspaces(const SparseMatrixCsr<T>& y,
                                      const ConstraintOperator<T>& c, double tol) {
    ProjectionResult<T> out;
    out.x = y;
    const ConstraintWork<T> work(c);
    if (work.lambda_size() == 0 || y.nnz() == 0) return out;

    std::vector<T> b;
    work.apply(y.values, b);
    const double rs0 = re_inner(b, b);
    if (rs0 == 0.0) return out;

    // C C^* is singular when constraints are redundant; the residual then
    // bottoms out at the rounding level of applying C, which is the honest
    // stopping floor for a consistent system.
    double cnorm2 = 0.0;
    for (const auto& [i, j] : c.pattern.positions) {
        for (index_t cc = 0; cc < work.kr; ++cc) cnorm2 += std::norm(c.right_null(j, cc));
        for (index_t cc = 0; cc < work.kl; ++cc) cnorm2 += std::norm(c.left_null(i, cc));
    }
    const double ynorm2 = real_of(kernels::dot_conj(y.values.size(), y.values.data(),
                                                    y.values.data()));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double floor2 = 1e4 * eps * eps * cnorm2 * ynorm2;
    const double target = std::max(tol * tol * rs0, floor2);

    // One CG pass on (C C^*) lambda = rhs, capped at the constraint count.
    const index_t cap = static_cast<index_t>(work.lambda_size());
    std::vector<T> q, scratch;
    const auto cg_pass = [&](const std::vector<T>& rhs, std::vector<T>& lam) -> index_t {
        std::vector<T> r = rhs;
        std::vector<T> p = rhs;
        double rs = re_inner(r, r);
        index_t it = 0;
        for (; it < cap && rs > target; ++it) {
            work.apply_adjoint(p, scratch);
            work.apply(scratch, q);
            const double pq = re_inner(p, q);
            const double pp = re_inner(p, p);
            if (!(pq > eps * eps * cnorm2 * pp)) break;  // p fell into null(C C^*)
            const double alpha = rs / pq;
            kernels::axpy(lam.size(), T{alpha}, p.data(), lam.data());
            kernels::axpy(r.size(), T{-alpha}, q.data(), r.data());
            const double rs_new = re_inner(r, r);
            const double beta = rs_new / rs;
            rs = rs_new;
            for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + T{beta} * p[i];
        }
        return it;
    };

    // Restarted refinement recovers the orthogonality CG loses on the
    // singular dual system; each pass projects the remaining violation.
    double rs_true = rs0;
    for (int pass = 0; pass < 3 && rs_true > target; ++pass) {
        work.apply(out.x.values, b);
        rs_true = re_inner(b, b);
        if (rs_true <= target) break;
        std::vector<T> lam(work.lambda_size(), T{});
        out.iterations += cg_pass(b, lam);
        work.apply_adjoint(lam, scratch);
        for (std::size_t t = 0; t < out.x.values.size(); ++t) out.x.values[t] -= scratch[t];
    }

    // the true constraint violation of the returned point
    work.apply(out.x.values, q);
    rs_true = re_inner(q, q);
    out.relative_residual = std::sqrt(rs_true / rs0);
    out.converged = rs_true <= std::max(target, floor2 * 1e2);
    return out;
}

namespace {

// Real-form constraint matrix: one real row per real constraint equation
// (two per complex one), columns over real pattern coordinates.
template <typename T>
DenseMatrix<double> constraints_real_form(const SparsityPattern& z,
                                          const DenseMatrix<T>& right_null,
                                          const DenseMatrix<T>& left_null) {
    constexpr bool cplx = is_complex_v<T>;
    const index_t m = z.num_rows;
    const index_t n = z.num_cols;
    const index_t kr = right_null.cols();
    const index_t kl = left_null.cols();
    const index_t nnz = z.nnz();
    const index_t rows_c = m * kr + kl * n;
    const index_t rows = cplx ? 2 * rows_c : rows_c;
    const index_t cols = cplx ? 2 * nnz : nnz;

    DenseMatrix<double> cmat(rows, cols);
    for (index_t t = 0; t < nnz; ++t) {
        const auto [i, j] = z.positions[static_cast<std::size_t>(t)];
        for (index_t cc = 0; cc < kr; ++cc) {
            const index_t row = i * kr + cc;
            const T v = right_null(j, cc);
            if constexpr (cplx) {
                // Re(x v) = xr Re v - xi Im v ; Im(x v) = xr Im v + xi Re v
                cmat(2 * row, t) += real_of(v);
                cmat(2 * row, nnz + t) += -imag_of(v);
                cmat(2 * row + 1, t) += imag_of(v);
                cmat(2 * row + 1, nnz + t) += real_of(v);
            } else {
                cmat(row, t) += real_of(v);
            }
        }
        for (index_t cc = 0; cc < kl; ++cc) {
            const index_t row = m * kr + j * kl + cc;
            const T v = conj_of(left_null(i, cc));
            if constexpr (cplx) {
                cmat(2 * row, t) += real_of(v);
                cmat(2 * row, nnz + t) += -imag_of(v);
                cmat(2 * row + 1, t) += imag_of(v);
                cmat(2 * row + 1, nnz + t) += real_of(v);
            } else {
                cmat(row, t) += real_of(v);
            }
        }
    }
    return cmat;
}

}  // namespace

template <typename T>
SparseMatrixCsr<T> solve_exact(const DenseMatrix<T>& a, const DenseMatrix<T>& pinv,
                               const SparsityPattern& pattern,
                               const DenseMatrix<T>& right_null,
                               const DenseMatrix<T>& left_null) {
    if (pattern.nnz() > 2000)
        throw std::invalid_argument(
            "solve_exact: pattern exceeds the 2000-nonzero guard; use the two-step path");
    if (pattern.num_rows != a.rows() || pattern.num_cols != a.cols())
        throw std::invalid_argument("solve_exact: pattern does not match matrix");
    if (pattern.nnz() == 0) return SparseMatrixCsr<T>::zero(a.rows(), a.cols());

    const MisfitOperator<T> mis = build_misfit(a, pinv);
    const BinAssignment singleton = compute_bins(a, pattern, 0);
    const ReducedSystem full = assemble_reduced(mis, singleton);

    const index_t nu = full.hessian.rows();
    const index_t kr = right_null.cols();
    const index_t kl = left_null.cols();
    const bool constrained = kr > 0 || kl > 0;

    DenseMatrix<double> cmat;
    index_t ncon = 0;
    if (constrained) {
        cmat = constraints_real_form(pattern, right_null, left_null);
        ncon = cmat.rows();
    }

    // Scale the Hessian block to unit magnitude so the rank decision inside
    // the least-squares solve cannot discard constraint rows; x is unchanged,
    // only the multipliers rescale.
    double hscale = 0.0;
    for (index_t j = 0; j < nu; ++j)
        for (index_t i = 0; i < nu; ++i) hscale = std::max(hscale, std::abs(full.hessian(i, j)));
    if (hscale == 0.0) hscale = 1.0;

    DenseMatrix<double> kkt(nu + ncon, nu + ncon);
    for (index_t j = 0; j < nu; ++j)
        for (index_t i = 0; i < nu; ++i) kkt(i, j) = full.hessian(i, j) / hscale;
    for (index_t r = 0; r < ncon; ++r)
        for (index_t t = 0; t < nu; ++t) {
            kkt(nu + r, t) = cmat(r, t);
            kkt(t, nu + r) = cmat(r, t);
        }

    // QR least-squares solve tolerates redundant (rank-deficient) constraints;
    // the rhs is [g; 0], so only the leading nu columns of the pseudoinverse act.
    const QrPinvFactorization<double> f = factorize_with_pinv(kkt);
    std::vector<double> sol(static_cast<std::size_t>(nu + ncon), 0.0);
    for (index_t j = 0; j < nu; ++j)
        kernels::axpy(sol.size(), full.rhs[static_cast<std::size_t>(j)] / hscale, f.pinv.col(j),
                      sol.data());

    return expand_bins<T>(std::vector<double>(sol.begin(), sol.begin() + nu), singleton);
}

#define SPS_INSTANTIATE(T)                                                               \
    template SparseMatrixCsr<T> expand_bins<T>(const std::vector<double>&,               \
                                               const BinAssignment&);                    \
    template struct ConstraintOperator<T>;                                               \
    template ProjectionResult<T> impose_nullspaces<T>(const SparseMatrixCsr<T>&,         \
                                                      const ConstraintOperator<T>&,      \
                                                      double);                           \
    template SparseMatrixCsr<T> solve_exact<T>(const DenseMatrix<T>&,                    \
                                               const DenseMatrix<T>&,                    \
                                               const SparsityPattern&,                   \
                                               const DenseMatrix<T>&,                    \
                                               const DenseMatrix<T>&);

SPS_INSTANTIATE(double)
SPS_INSTANTIATE(std::complex<double>)

#undef SPS_INSTANTIATE

}  // namespace sps
