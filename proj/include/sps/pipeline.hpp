#pragma once

#include <optional>
#include <string>

#include "sps/csr.hpp"
#include "sps/dense.hpp"
#include "sps/pattern.hpp"

namespace sps {

/// Claimed input structure; mirrors the library's public enumeration.
enum class MatrixType {
    undefined = -1,
    general = 0,
    hermitian_pos_def,
    hermitian_pos_semi_def,
    hermitian,
    skew_hermitian,
    complex_symmetric,
};

const char* matrix_type_name(MatrixType t);
std::optional<MatrixType> matrix_type_from_name(const std::string& name);

struct SparsifyConfig {
    double sparsity_ratio = 1.0;   // in [0, 1]
    double sparsity_norm_p = 1.0;  // in [0, inf]
    index_t max_num_bins = 0;      // 0: every unknown its own bin
    bool impose_null_spaces = false;
    MatrixType matrix_type = MatrixType::undefined;
    std::optional<double> rank_tol_override;
    double cg_tol = 1e-12;
};

struct StageTimings {
    double factor_ms = 0.0;
    double pattern_ms = 0.0;
    double bins_ms = 0.0;
    double assemble_ms = 0.0;
    double solve_ms = 0.0;
    double impose_ms = 0.0;
    double total_ms = 0.0;
};

struct SparsifyReport {
    index_t nnz = 0;
    index_t n_unknowns = 0;  // pattern entries times scalar parts
    index_t n_bins = 0;
    index_t rank = 0;
    double rank_tol = 0.0;
    bool ridge_used = false;
    bool solver_fallback_zero = false;
    index_t cg_iterations = 0;
    double cg_residual = 0.0;
    bool cg_converged = true;
    bool null_spaces_imposed = false;
    double objective_value = 0.0;
    double right_null_residual = 0.0;  // ||X right_null||_F / ||X||_F
    double left_null_residual = 0.0;   // ||left_null^* X||_F / ||X||_F
    StageTimings timing;
};

template <typename T>
struct SparsifyResult {
    SparseMatrixCsr<T> x;
    SparseMatrixCsr<T> intermediate_y;  // before null-space imposition
    SparsifyReport report;
};

/// True iff a satisfies the claimed structure within 1e-12 * ||a||_F.
template <typename T>
bool structure_check(const DenseMatrix<T>& a, MatrixType kind);

/// Full two-step sparsification: pattern, bins, reduced Cholesky solve, and
/// (for rank-deficient input, when requested) null-space imposition.
template <typename T>
SparsifyResult<T> sparsify(const DenseMatrix<T>& a, const SparsifyConfig& cfg);

/// Same but with a caller-supplied pattern instead of the L_p rule.
template <typename T>
SparsifyResult<T> sparsify_for_pattern(const DenseMatrix<T>& a, const SparsityPattern& pattern,
                                       const SparsifyConfig& cfg);

/// One-step exact solves (pattern-size guarded).
template <typename T>
SparseMatrixCsr<T> sparsify_exact(const DenseMatrix<T>& a, double ratio, double p);

template <typename T>
SparseMatrixCsr<T> sparsify_exact_for_pattern(const DenseMatrix<T>& a,
                                              const SparsityPattern& pattern);

struct DiagnosticsReport {
    index_t rank = 0;
    double cond_pinv_product = 0.0;  // cond(A^+ X) over the leading rank(A) values
    double rel_pinv_diff = 0.0;      // ||X^+ - A^+||_F / ||A^+||_F
    double objective_value = 0.0;
    double nnz_ratio = 0.0;          // nnz(X) / nnz(A)
    std::optional<double> hessian_cond;  // pattern Hessian, only when nnz <= 2000
};

/// Spectral quality measures of a sparse approximation x of a.
template <typename T>
DiagnosticsReport diagnostics(const DenseMatrix<T>& a, const SparseMatrixCsr<T>& x,
                              bool with_hessian_cond = false);

/// Status-code entry point mirroring the column-oriented C-style surface:
/// returns 0 on success, 1 on invalid arguments, 2 on numerical failure.
template <typename T>
int lpn(index_t num_rows, index_t num_cols, const T* col_values, index_t col_leading_dim,
        double sparsity_ratio, double sparsity_norm_p, index_t max_num_bins,
        bool impose_null_spaces, MatrixType matrix_type,
        SparseMatrixCsr<T>& out_matrix) noexcept;

}  // namespace sps
