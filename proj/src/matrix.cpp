#include "cochainlab/matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cochainlab {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    if (rows.empty()) return RatMatrix();
    RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows; ++r) {
        if (static_cast<int>(rows[r].size()) != m.cols) throw std::invalid_argument("ragged rows");
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

RatMatrix RatMatrix::from_cols(const std::vector<RatVec>& cols) {
    if (cols.empty()) return RatMatrix();
    RatMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (int c = 0; c < m.cols; ++c) {
        if (static_cast<int>(cols[c].size()) != m.rows) throw std::invalid_argument("ragged cols");
        for (int r = 0; r < m.rows; ++r) m.at(r, c) = cols[c][r];
    }
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
}

bool RatMatrix::is_zero() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

bool RatMatrix::is_identity() const {
    if (rows != cols) return false;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (at(r, c) != (r == c ? 1 : 0)) return false;
    return true;
}

RatVec RatMatrix::col(int c) const {
    RatVec v(rows);
    for (int r = 0; r < rows; ++r) v[r] = at(r, c);
    return v;
}

RatVec RatMatrix::row(int r) const {
    RatVec v(cols);
    for (int c = 0; c < cols; ++c) v[c] = at(r, c);
    return v;
}

RatMatrix operator+(const RatMatrix& x, const RatMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("shape mismatch");
    RatMatrix z(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = x.a[i] + y.a[i];
    return z;
}

RatMatrix operator-(const RatMatrix& x, const RatMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("shape mismatch");
    RatMatrix z(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = x.a[i] - y.a[i];
    return z;
}

RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("shape mismatch");
    RatMatrix z(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int k = 0; k < x.cols; ++k) {
            const Rat& v = x.at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < y.cols; ++c) {
                if (y.at(k, c) == 0) continue;
                z.at(r, c) += v * y.at(k, c);
            }
        }
    return z;
}

RatMatrix operator*(const Rat& s, const RatMatrix& x) {
    RatMatrix z(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = s * x.a[i];
    return z;
}

bool operator==(const RatMatrix& x, const RatMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

RatVec RatMatrix::apply(const RatVec& v) const {
    if (static_cast<int>(v.size()) != cols) throw std::invalid_argument("shape mismatch");
    RatVec w(rows);
    for (int r = 0; r < rows; ++r) {
        Rat s = 0;
        for (int c = 0; c < cols; ++c)
            if (at(r, c) != 0) s += at(r, c) * v[c];
        w[r] = s;
    }
    return w;
}

RatMatrix RatMatrix::hcat(const RatMatrix& other) const {
    if (rows != other.rows) throw std::invalid_argument("shape mismatch");
    RatMatrix z(rows, cols + other.cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) z.at(r, c) = at(r, c);
        for (int c = 0; c < other.cols; ++c) z.at(r, cols + c) = other.at(r, c);
    }
    return z;
}

RatMatrix RatMatrix::vcat(const RatMatrix& other) const {
    if (cols != other.cols) throw std::invalid_argument("shape mismatch");
    RatMatrix z(rows + other.rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) z.at(r, c) = at(r, c);
    for (int r = 0; r < other.rows; ++r)
        for (int c = 0; c < cols; ++c) z.at(rows + r, c) = other.at(r, c);
    return z;
}

std::vector<double> RatMatrix::to_doubles() const {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = rat_to_double(a[i]);
    return d;
}

std::vector<double> apply_double(const RatMatrix& A, const std::vector<double>& v) {
    std::vector<double> w(A.rows, 0.0);
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) {
            const Rat& q = A.at(r, c);
            if (q != 0) w[r] += rat_to_double(q) * v[c];
        }
    return w;
}

RatVec operator+(const RatVec& x, const RatVec& y) {
    RatVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return z;
}

RatVec operator-(const RatVec& x, const RatVec& y) {
    RatVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
    return z;
}

RatVec operator*(const Rat& s, const RatVec& x) {
    RatVec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = s * x[i];
    return z;
}

bool vec_is_zero(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Rat dot(const RatVec& x, const RatVec& y) {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

void SparseRatMatrix::finalize() {
    for (auto& r : row) {
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Rat>> out;
        out.reserve(r.size());
        for (auto& e : r) {
            if (!out.empty() && out.back().first == e.first)
                out.back().second += e.second;
            else
                out.push_back(e);
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second == 0; }),
                  out.end());
        r = std::move(out);
    }
}

std::size_t SparseRatMatrix::nnz() const {
    std::size_t s = 0;
    for (const auto& r : row) s += r.size();
    return s;
}

bool SparseRatMatrix::is_zero() const { return nnz() == 0; }

SparseRatMatrix SparseRatMatrix::transpose() const {
    SparseRatMatrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : row[r]) t.row[c].emplace_back(r, v);
    // column order within each transposed row is increasing already
    return t;
}

RatVec SparseRatMatrix::apply(const RatVec& v) const {
    if (static_cast<int>(v.size()) != cols) throw std::invalid_argument("shape mismatch");
    RatVec w(rows);
    for (int r = 0; r < rows; ++r) {
        Rat s = 0;
        for (const auto& [c, val] : row[r]) s += val * v[c];
        w[r] = s;
    }
    return w;
}

SparseRatMatrix SparseRatMatrix::multiply(const SparseRatMatrix& other) const {
    if (cols != other.rows) throw std::invalid_argument("shape mismatch");
    SparseRatMatrix z(rows, other.cols);
    for (int r = 0; r < rows; ++r) {
        std::map<int, Rat> acc;
        for (const auto& [k, v] : row[r])
            for (const auto& [c, w] : other.row[k]) acc[c] += v * w;
        for (auto& [c, v] : acc)
            if (v != 0) z.row[r].emplace_back(c, v);
    }
    return z;
}

RatMatrix SparseRatMatrix::to_dense() const {
    RatMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : row[r]) m.at(r, c) = v;
    return m;
}

}  // namespace cochainlab
