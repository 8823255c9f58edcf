#pragma once

#include <optional>
#include <vector>

#include "cochainlab/matrix.hpp"

namespace cochainlab {

/// Result of fraction-free (Bareiss) elimination with full pivoting.
/// Pivot choice: nonzero entry of smallest bit length, ties broken
/// lexicographically, so results are reproducible.
struct Eliminated {
    int rank = 0;
    std::vector<int> col_perm;               ///< position -> original column
    std::vector<std::vector<Int>> echelon;   ///< rank rows over the permuted columns
    int pivot_cols = 0;                      ///< columns eligible for pivoting (< total for augmented solves)
    int total_cols = 0;
};

/// Fraction-free Bareiss elimination after clearing row denominators.
/// Only the first `pivot_cols` columns are eligible as pivots (pass A.cols
/// for a plain elimination; augmented systems pass the width of A).
Eliminated bareiss_eliminate(const RatMatrix& A, int pivot_cols);

int rat_rank(const RatMatrix& A);

/// Columns form a basis of the right kernel; empty matrix when injective.
RatMatrix kernel_basis(const RatMatrix& A);

/// Original indices of a maximal independent column set, sorted.
std::vector<int> pivot_columns(const RatMatrix& A);

/// Basis of the column space (a subset of the original columns).
RatMatrix column_space_basis(const RatMatrix& A);

std::optional<RatVec> solve_linear(const RatMatrix& A, const RatVec& b);

/// Exact inverse; throws std::domain_error when singular.
RatMatrix rat_inverse(const RatMatrix& A);

bool in_column_space(const RatMatrix& B, const RatVec& v);
/// colspace(A) ⊆ colspace(B)
bool columns_contained(const RatMatrix& A, const RatMatrix& B);
bool same_column_space(const RatMatrix& A, const RatMatrix& B);

/// Sparse exact elimination (leading-column reduction, deterministic row
/// order by (nnz, bit length, index)). Rank only; orientation is the
/// caller's choice since rank(A) = rank(A^T).
int sparse_rank(const SparseRatMatrix& A);

/// Right-kernel basis of a sparse matrix; intended for moderate column
/// counts (the flat cochain dimension).
RatMatrix sparse_kernel_basis(const SparseRatMatrix& A);

/// Float rank with relative tolerance (Gaussian elimination, partial pivot).
int float_rank(const SparseRatMatrix& A, double rel_tol = 1e-9);
int float_rank_dense(std::vector<std::vector<double>> m, double rel_tol = 1e-9);

/// Exact positive (semi)definiteness of a symmetric rational matrix.
bool is_psd_exact(const RatMatrix& S);
bool is_pd_exact(const RatMatrix& S);

/// Certified upper bound on the largest eigenvalue of the symmetric pencil
/// (M, G), G positive definite: smallest t found with t*G - M PSD, tightened
/// by bisection to relative width `rel_tol`. Exact arithmetic throughout.
Rat pencil_lambda_max_upper(const RatMatrix& M, const RatMatrix& G, double rel_tol = 1e-9,
                            int max_iter = 80);

/// Exact Rayleigh quotient x^T M x / x^T G x (a certified lower bound on the
/// pencil's largest eigenvalue for any nonzero x).
Rat pencil_rayleigh(const RatMatrix& M, const RatMatrix& G, const RatVec& x);

/// Float power iteration for the largest eigenvalue of the pencil (M, G);
/// returns the estimate and the iterate.
std::pair<double, std::vector<double>> pencil_power_iteration(const RatMatrix& M, const RatMatrix& G,
                                                              int iters = 200);

}  // namespace cochainlab
