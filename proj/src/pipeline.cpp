#include "sps/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "sps/cholesky.hpp"
#include "sps/kernels.hpp"
#include "sps/misfit.hpp"
#include "sps/qr.hpp"
#include "sps/solver.hpp"
#include "sps/svd.hpp"

namespace sps {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void validate_config(const SparsifyConfig& cfg) {
    if (!(cfg.sparsity_ratio >= 0.0 && cfg.sparsity_ratio <= 1.0))
        throw std::invalid_argument("sparsify: sparsity_ratio must be in [0,1]");
    if (std::isnan(cfg.sparsity_norm_p) || cfg.sparsity_norm_p < 0.0)
        throw std::invalid_argument("sparsify: sparsity_norm_p must be in [0,inf]");
    if (cfg.max_num_bins < 0)
        throw std::invalid_argument("sparsify: max_num_bins must be >= 0");
    if (!(cfg.cg_tol > 0.0))
        throw std::invalid_argument("sparsify: cg_tol must be positive");
}

bool is_symmetric_kind(MatrixType t) {
    switch (t) {
        case MatrixType::hermitian_pos_def:
        case MatrixType::hermitian_pos_semi_def:
        case MatrixType::hermitian:
        case MatrixType::skew_hermitian:
        case MatrixType::complex_symmetric:
            return true;
        default:
            return false;
    }
}

// residual ||a - g(a)||_F of the defining identity of the claimed structure
template <typename T>
double structure_residual(const DenseMatrix<T>& a, MatrixType kind) {
    double s = 0.0;
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < a.rows(); ++i) {
            T ref;
            switch (kind) {
                case MatrixType::skew_hermitian: ref = -conj_of(a(j, i)); break;
                case MatrixType::complex_symmetric: ref = a(j, i); break;
                default: ref = conj_of(a(j, i)); break;  // Hermitian kinds
            }
            s += std::norm(a(i, j) - ref);
        }
    return std::sqrt(s);
}

// average the matrix with its structural image, making the structure exact
template <typename T>
void symmetrize_csr(SparseMatrixCsr<T>& x, MatrixType kind) {
    const DenseMatrix<T> d = csr_to_dense(x);
    for (index_t i = 0; i < x.num_rows; ++i) {
        for (index_t t = x.row_offsets[static_cast<std::size_t>(i)];
             t < x.row_offsets[static_cast<std::size_t>(i) + 1]; ++t) {
            const index_t j = x.column_ids[static_cast<std::size_t>(t)];
            T mirror;
            switch (kind) {
                case MatrixType::skew_hermitian: mirror = -conj_of(d(j, i)); break;
                case MatrixType::complex_symmetric: mirror = d(j, i); break;
                default: mirror = conj_of(d(j, i)); break;
            }
            x.values[static_cast<std::size_t>(t)] =
                (x.values[static_cast<std::size_t>(t)] + mirror) * T{0.5};
        }
    }
}

template <typename T>
SparsifyResult<T> run_pipeline(const DenseMatrix<T>& a, const SparsityPattern* user_pattern,
                               const SparsifyConfig& cfg) {
    validate_config(cfg);
    require_finite(a, "sparsify");
    if (cfg.matrix_type != MatrixType::undefined && cfg.matrix_type != MatrixType::general &&
        !structure_check(a, cfg.matrix_type))
        throw std::invalid_argument(std::string("sparsify: input violates claimed structure ") +
                                    matrix_type_name(cfg.matrix_type));

    SparsifyResult<T> out;
    SparsifyReport& rep = out.report;
    const auto t_total = std::chrono::steady_clock::now();

    auto t0 = std::chrono::steady_clock::now();
    const QrPinvFactorization<T> f = factorize_with_pinv(a, cfg.rank_tol_override);
    rep.rank = f.rank;
    rep.rank_tol = f.rank_tol;
    rep.timing.factor_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const SparsityPattern pattern =
        user_pattern != nullptr ? *user_pattern
                                : lp_pattern(a, cfg.sparsity_ratio, cfg.sparsity_norm_p);
    if (pattern.num_rows != a.rows() || pattern.num_cols != a.cols())
        throw std::invalid_argument("sparsify: pattern does not match matrix");
    rep.nnz = pattern.nnz();
    rep.n_unknowns = pattern.nnz() * (is_complex_v<T> ? 2 : 1);
    rep.timing.pattern_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const BinAssignment bins = compute_bins(a, pattern, cfg.max_num_bins);
    rep.n_bins = bins.n_bins;
    rep.timing.bins_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const MisfitOperator<T> mis = build_misfit(a, f.pinv);
    const ReducedSystem sys = assemble_reduced(mis, bins);
    rep.timing.assemble_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    std::vector<double> y;
    try {
        SpdSolveResult solved = solve_spd(sys);
        y = std::move(solved.y);
        rep.ridge_used = solved.ridge_used;
    } catch (const std::runtime_error&) {
        // a minimizer still exists; fall back to the feasible zero matrix
        y.assign(static_cast<std::size_t>(bins.n_bins), 0.0);
        rep.solver_fallback_zero = true;
    }
    out.intermediate_y = expand_bins<T>(y, bins);
    rep.timing.solve_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    if (cfg.impose_null_spaces && (f.left_null.cols() > 0 || f.right_null.cols() > 0)) {
        ConstraintOperator<T> con{pattern, f.right_null, f.left_null};
        ProjectionResult<T> proj = impose_nullspaces(out.intermediate_y, con, cfg.cg_tol);
        out.x = std::move(proj.x);
        rep.cg_iterations = proj.iterations;
        rep.cg_residual = proj.relative_residual;
        rep.cg_converged = proj.converged;
        rep.null_spaces_imposed = true;
    } else {
        out.x = out.intermediate_y;
    }
    rep.timing.impose_ms = ms_since(t0);

    if (is_symmetric_kind(cfg.matrix_type)) {
        const DenseMatrix<T> xd = csr_to_dense(out.x);
        const double xnorm = frobenius_norm(xd);
        if (structure_residual(xd, cfg.matrix_type) > 1e-10 * std::max(xnorm, 1e-300))
            throw std::runtime_error("sparsify: output violates the claimed structure");
        symmetrize_csr(out.x, cfg.matrix_type);
    }

    rep.objective_value = objective(out.x, a, f.pinv);
    if (f.right_null.cols() > 0 || f.left_null.cols() > 0) {
        const DenseMatrix<T> xd = csr_to_dense(out.x);
        const double xnorm = frobenius_norm(xd);
        const double denom = xnorm > 0.0 ? xnorm : 1.0;
        if (f.right_null.cols() > 0)
            rep.right_null_residual = frobenius_norm(multiply(xd, f.right_null)) / denom;
        if (f.left_null.cols() > 0)
            rep.left_null_residual =
                frobenius_norm(multiply_adjoint_left(f.left_null, xd)) / denom;
    }
    rep.timing.total_ms = ms_since(t_total);
    return out;
}

}  // namespace

const char* matrix_type_name(MatrixType t) {
    switch (t) {
        case MatrixType::undefined: return "undefined";
        case MatrixType::general: return "general";
        case MatrixType::hermitian_pos_def: return "hermitian_pos_def";
        case MatrixType::hermitian_pos_semi_def: return "hermitian_pos_semi_def";
        case MatrixType::hermitian: return "hermitian";
        case MatrixType::skew_hermitian: return "skew_hermitian";
        case MatrixType::complex_symmetric: return "complex_symmetric";
    }
    return "unknown";
}

std::optional<MatrixType> matrix_type_from_name(const std::string& name) {
    for (const MatrixType t :
         {MatrixType::undefined, MatrixType::general, MatrixType::hermitian_pos_def,
          MatrixType::hermitian_pos_semi_def, MatrixType::hermitian, MatrixType::skew_hermitian,
          MatrixType::complex_symmetric}) {
        if (name == matrix_type_name(t)) return t;
    }
    return std::nullopt;
}

template <typename T>
bool structure_check(const DenseMatrix<T>& a, MatrixType kind) {
    require_finite(a, "structure_check");
    if (kind == MatrixType::undefined || kind == MatrixType::general) return true;
    if (a.rows() != a.cols())
        throw std::invalid_argument("structure_check: structured kinds require a square matrix");

    const double tol = 1e-12 * frobenius_norm(a);
    if (structure_residual(a, kind) > tol) return false;

    if (kind == MatrixType::hermitian_pos_def || kind == MatrixType::hermitian_pos_semi_def) {
        DenseMatrix<T> h = a;
        for (index_t j = 0; j < a.cols(); ++j)
            for (index_t i = 0; i < a.rows(); ++i)
                h(i, j) = (a(i, j) + conj_of(a(j, i))) * T{0.5};
        if (kind == MatrixType::hermitian_pos_semi_def) {
            const double shift = 1e-12 * std::max(frobenius_norm(a), 1.0);
            for (index_t i = 0; i < a.rows(); ++i) h(i, i) += T{shift};
        }
        return cholesky_in_place(h);
    }
    return true;
}

template <typename T>
SparsifyResult<T> sparsify(const DenseMatrix<T>& a, const SparsifyConfig& cfg) {
    return run_pipeline(a, nullptr, cfg);
}

template <typename T>
SparsifyResult<T> sparsify_for_pattern(const DenseMatrix<T>& a, const SparsityPattern& pattern,
                                       const SparsifyConfig& cfg) {
    return run_pipeline(a, &pattern, cfg);
}

template <typename T>
SparseMatrixCsr<T> sparsify_exact(const DenseMatrix<T>& a, double ratio, double p) {
    require_finite(a, "sparsify_exact");
    const SparsityPattern pattern = lp_pattern(a, ratio, p);
    return sparsify_exact_for_pattern(a, pattern);
}

template <typename T>
SparseMatrixCsr<T> sparsify_exact_for_pattern(const DenseMatrix<T>& a,
                                              const SparsityPattern& pattern) {
    require_finite(a, "sparsify_exact");
    const QrPinvFactorization<T> f = factorize_with_pinv(a);
    return solve_exact(a, f.pinv, pattern, f.right_null, f.left_null);
}

template <typename T>
DiagnosticsReport diagnostics(const DenseMatrix<T>& a, const SparseMatrixCsr<T>& x,
                              bool with_hessian_cond) {
    require_finite(a, "diagnostics");
    if (x.num_rows != a.rows() || x.num_cols != a.cols())
        throw std::invalid_argument("diagnostics: shape mismatch");

    DiagnosticsReport rep;
    const QrPinvFactorization<T> f = factorize_with_pinv(a);
    rep.rank = f.rank;

    const DenseMatrix<T> xd = csr_to_dense(x);
    const std::vector<double> s = singular_values(multiply(f.pinv, xd));
    const double s_r = f.rank >= 1 ? s[static_cast<std::size_t>(f.rank - 1)] : 0.0;
    rep.cond_pinv_product =
        s_r > 0.0 ? s[0] / s_r : std::numeric_limits<double>::infinity();

    const DenseMatrix<T> xp = pseudoinverse_via_svd(xd);
    const double pn = frobenius_norm(f.pinv);
    rep.rel_pinv_diff = pn > 0.0 ? frobenius_norm(subtract(xp, f.pinv)) / pn : 0.0;

    rep.objective_value = objective(xd, a, f.pinv);
    index_t a_nnz = 0;
    for (index_t j = 0; j < a.cols(); ++j)
        for (index_t i = 0; i < a.rows(); ++i)
            if (a(i, j) != T{}) ++a_nnz;
    rep.nnz_ratio = a_nnz > 0 ? static_cast<double>(x.nnz()) / a_nnz : 0.0;

    if (with_hessian_cond) {
        SparsityPattern z;
        z.num_rows = x.num_rows;
        z.num_cols = x.num_cols;
        std::vector<char> keep(static_cast<std::size_t>(x.num_rows) * x.num_cols, 0);
        for (index_t i = 0; i < x.num_rows; ++i)
            for (index_t t = x.row_offsets[static_cast<std::size_t>(i)];
                 t < x.row_offsets[static_cast<std::size_t>(i) + 1]; ++t)
                keep[static_cast<std::size_t>(i) * x.num_cols +
                     x.column_ids[static_cast<std::size_t>(t)]] = 1;
        z = SparsityPattern::from_mask_array(x.num_rows, x.num_cols, keep);
        if (z.nnz() > 0 && z.nnz() <= 2000) {
            const MisfitOperator<T> mis = build_misfit(a, f.pinv);
            const BinAssignment singleton = compute_bins(a, z, 0);
            const ReducedSystem full = assemble_reduced(mis, singleton);
            const std::vector<double> hs = singular_values(full.hessian);
            const double smin = hs.back();
            rep.hessian_cond =
                smin > 0.0 ? hs[0] / smin : std::numeric_limits<double>::infinity();
        }
    }
    return rep;
}

template <typename T>
int lpn(index_t num_rows, index_t num_cols, const T* col_values, index_t col_leading_dim,
        double sparsity_ratio, double sparsity_norm_p, index_t max_num_bins,
        bool impose_null_spaces, MatrixType matrix_type,
        SparseMatrixCsr<T>& out_matrix) noexcept {
    try {
        const DenseMatrix<T> a =
            DenseMatrix<T>::from_columns(num_rows, num_cols, col_values, col_leading_dim);
        SparsifyConfig cfg;
        cfg.sparsity_ratio = sparsity_ratio;
        cfg.sparsity_norm_p = sparsity_norm_p;
        cfg.max_num_bins = max_num_bins;
        cfg.impose_null_spaces = impose_null_spaces;
        cfg.matrix_type = matrix_type;
        out_matrix = sparsify(a, cfg).x;
        return 0;
    } catch (const std::invalid_argument&) {
        return 1;
    } catch (...) {
        return 2;
    }
}

#define SPS_INSTANTIATE(T)                                                                  \
    template bool structure_check<T>(const DenseMatrix<T>&, MatrixType);                    \
    template SparsifyResult<T> sparsify<T>(const DenseMatrix<T>&, const SparsifyConfig&);   \
    template SparsifyResult<T> sparsify_for_pattern<T>(const DenseMatrix<T>&,               \
                                                       const SparsityPattern&,              \
                                                       const SparsifyConfig&);              \
    template SparseMatrixCsr<T> sparsify_exact<T>(const DenseMatrix<T>&, double, double);   \
    template SparseMatrixCsr<T> sparsify_exact_for_pattern<T>(const DenseMatrix<T>&,        \
                                                              const SparsityPattern&);      \
    template DiagnosticsReport diagnostics<T>(const DenseMatrix<T>&,                        \
                                              const SparseMatrixCsr<T>&, bool);             \
    template int lpn<T>(index_t, index_t, const T*, index_t, double, double, index_t, bool, \
                        MatrixType, SparseMatrixCsr<T>&) noexcept;

SPS_INSTANTIATE(double)
SPS_INSTANTIATE(std::complex<double>)

#undef SPS_INSTANTIATE

}  // namespace sps
