#pragma once

#include <utility>
#include <vector>

#include "cochainlab/rational.hpp"

namespace cochainlab {

using RatVec = std::vector<Rat>;

/// Dense exact-rational matrix, row-major.
struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> a;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    Rat& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Rat& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    static RatMatrix identity(int n);
    static RatMatrix zero(int r, int c) { return RatMatrix(r, c); }
    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);
    /// Columns assembled from the given vectors.
    static RatMatrix from_cols(const std::vector<RatVec>& cols);

    RatMatrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;
    RatVec col(int c) const;
    RatVec row(int r) const;

    friend RatMatrix operator+(const RatMatrix& x, const RatMatrix& y);
    friend RatMatrix operator-(const RatMatrix& x, const RatMatrix& y);
    friend RatMatrix operator*(const RatMatrix& x, const RatMatrix& y);
    friend RatMatrix operator*(const Rat& s, const RatMatrix& x);
    friend bool operator==(const RatMatrix& x, const RatMatrix& y);
    RatVec apply(const RatVec& v) const;

    /// Horizontal concatenation [this | other].
    RatMatrix hcat(const RatMatrix& other) const;
    /// Vertical concatenation.
    RatMatrix vcat(const RatMatrix& other) const;
    std::vector<double> to_doubles() const;
};

/// Float image of a rational matrix (norm evaluations only).
std::vector<double> apply_double(const RatMatrix& A, const std::vector<double>& v);

RatVec operator+(const RatVec& x, const RatVec& y);
RatVec operator-(const RatVec& x, const RatVec& y);
RatVec operator*(const Rat& s, const RatVec& x);
bool vec_is_zero(const RatVec& v);
Rat dot(const RatVec& x, const RatVec& y);

/// Sparse exact-rational matrix; rows of (col, value) pairs sorted by column.
/// Entries accumulate through add() and are normalized (zero-free, sorted) by
/// finalize(); the query/apply methods require finalized rows.
struct SparseRatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, Rat>>> row;

    SparseRatMatrix() = default;
    SparseRatMatrix(int r, int c) : rows(r), cols(c), row(r) {}

    void add(int r, int c, const Rat& v) {
        if (v != 0) row[r].emplace_back(c, v);
    }
    void finalize();

    std::size_t nnz() const;
    bool is_zero() const;
    SparseRatMatrix transpose() const;
    RatVec apply(const RatVec& v) const;
    /// Sparse-sparse product this * other (used for the ∂∂ = 0 checks).
    SparseRatMatrix multiply(const SparseRatMatrix& other) const;
    RatMatrix to_dense() const;
};

}  // namespace cochainlab
