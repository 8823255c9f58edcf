#include "cochainlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cochainlab {

namespace {

// Clear each row's denominators; row scaling preserves rank, kernel and
// column dependencies.
std::vector<std::vector<Int>> clear_rows(const RatMatrix& A) {
    std::vector<std::vector<Int>> M(A.rows, std::vector<Int>(A.cols));
    for (int r = 0; r < A.rows; ++r) {
        Int l = 1;
        for (int c = 0; c < A.cols; ++c) {
            const Int& den = A.at(r, c).get_den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        }
        for (int c = 0; c < A.cols; ++c) {
            const Rat& q = A.at(r, c);
            M[r][c] = q.get_num() * (l / q.get_den());
        }
    }
    return M;
}

}  // namespace

Eliminated bareiss_eliminate(const RatMatrix& A, int pivot_cols) {
    Eliminated res;
    res.pivot_cols = pivot_cols;
    res.total_cols = A.cols;
    res.col_perm.resize(A.cols);
    for (int j = 0; j < A.cols; ++j) res.col_perm[j] = j;
    if (A.rows == 0 || A.cols == 0) return res;

    auto M = clear_rows(A);
    const int m = A.rows;
    const int n = A.cols;
    Int prev = 1;
    int k = 0;
    while (k < m && k < pivot_cols) {
        // full pivot among remaining rows and pivotable columns
        int pi = -1, pj = -1;
        std::size_t best = 0;
        for (int i = k; i < m; ++i)
            for (int j = k; j < pivot_cols; ++j) {
                if (M[i][j] == 0) continue;
                std::size_t b = int_bits(M[i][j]);
                if (pi < 0 || b < best) {
                    best = b;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        std::swap(M[k], M[pi]);
        if (pj != k) {
            for (int i = 0; i < m; ++i) std::swap(M[i][k], M[i][pj]);
            std::swap(res.col_perm[k], res.col_perm[pj]);
        }
        for (int i = k + 1; i < m; ++i) {
            // the update applies to every trailing entry, including rows with
            // a zero leading coefficient, or the exact-division invariant breaks
            for (int j = k + 1; j < n; ++j) {
                Int t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
        ++k;
    }
    res.rank = k;
    res.echelon.assign(M.begin(), M.begin() + k);
    return res;
}

int rat_rank(const RatMatrix& A) { return bareiss_eliminate(A, A.cols).rank; }

RatMatrix kernel_basis(const RatMatrix& A) {
    const int n = A.cols;
    Eliminated e = bareiss_eliminate(A, n);
    const int r = e.rank;
    RatMatrix K(n, n - r);
    for (int f = 0; f < n - r; ++f) {
        // permuted coordinates: position r+f is the free variable
        RatVec y(n, Rat(0));
        y[r + f] = 1;
        for (int k = r - 1; k >= 0; --k) {
            Rat s = 0;
            for (int j = k + 1; j < n; ++j)
                if (e.echelon[k][j] != 0 && y[j] != 0) s += Rat(e.echelon[k][j]) * y[j];
            y[k] = -s / Rat(e.echelon[k][k]);
        }
        for (int j = 0; j < n; ++j) K.at(e.col_perm[j], f) = y[j];
    }
    return K;
}

std::vector<int> pivot_columns(const RatMatrix& A) {
    Eliminated e = bareiss_eliminate(A, A.cols);
    std::vector<int> p(e.col_perm.begin(), e.col_perm.begin() + e.rank);
    std::sort(p.begin(), p.end());
    return p;
}

RatMatrix column_space_basis(const RatMatrix& A) {
    auto piv = pivot_columns(A);
    RatMatrix B(A.rows, static_cast<int>(piv.size()));
    for (int j = 0; j < B.cols; ++j)
        for (int r = 0; r < A.rows; ++r) B.at(r, j) = A.at(r, piv[j]);
    return B;
}

std::optional<RatVec> solve_linear(const RatMatrix& A, const RatVec& b) {
    if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("shape mismatch");
    RatMatrix aug(A.rows, A.cols + 1);
    for (int r = 0; r < A.rows; ++r) {
        for (int c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, A.cols) = b[r];
    }
    Eliminated e = bareiss_eliminate(aug, A.cols);
    const int r = e.rank;
    // rows beyond rank have zero A-part by full pivoting; consistency needs
    // the transformed b there to vanish, which is equivalent to
    // rank([A|b]) == rank(A).
    Eliminated full = bareiss_eliminate(aug, A.cols + 1);
    if (full.rank != r) return std::nullopt;
    RatVec y(A.cols, Rat(0));
    for (int k = r - 1; k >= 0; --k) {
        Rat s = Rat(e.echelon[k][A.cols]);
        for (int j = k + 1; j < A.cols; ++j)
            if (e.echelon[k][j] != 0 && y[j] != 0) s -= Rat(e.echelon[k][j]) * y[j];
        y[k] = s / Rat(e.echelon[k][k]);
    }
    RatVec x(A.cols, Rat(0));
    for (int j = 0; j < A.cols; ++j) x[e.col_perm[j]] = y[j];
    return x;
}

RatMatrix rat_inverse(const RatMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("inverse of non-square matrix");
    const int n = A.rows;
    RatMatrix aug(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, n + r) = 1;
    }
    Eliminated e = bareiss_eliminate(aug, n);
    if (e.rank != n) throw std::domain_error("singular matrix");
    RatMatrix inv(n, n);
    for (int col = 0; col < n; ++col) {
        RatVec y(n, Rat(0));
        for (int k = n - 1; k >= 0; --k) {
            Rat s = Rat(e.echelon[k][n + col]);
            for (int j = k + 1; j < n; ++j)
                if (e.echelon[k][j] != 0 && y[j] != 0) s -= Rat(e.echelon[k][j]) * y[j];
            y[k] = s / Rat(e.echelon[k][k]);
        }
        for (int j = 0; j < n; ++j) inv.at(e.col_perm[j], col) = y[j];
    }
    return inv;
}

bool in_column_space(const RatMatrix& B, const RatVec& v) {
    RatMatrix aug(B.rows, B.cols + 1);
    for (int r = 0; r < B.rows; ++r) {
        for (int c = 0; c < B.cols; ++c) aug.at(r, c) = B.at(r, c);
        aug.at(r, B.cols) = v[r];
    }
    return rat_rank(aug) == rat_rank(B);
}

bool columns_contained(const RatMatrix& A, const RatMatrix& B) {
    if (A.cols == 0) return true;
    return rat_rank(B.hcat(A)) == rat_rank(B);
}

bool same_column_space(const RatMatrix& A, const RatMatrix& B) {
    int ra = rat_rank(A), rb = rat_rank(B);
    if (ra != rb) return false;
    return rat_rank(A.hcat(B)) == ra;
}

namespace {

using SRow = std::vector<std::pair<int, Rat>>;

// r -= coef * p, both sorted by column.
SRow row_axpy(const SRow& r, const Rat& coef, const SRow& p) {
    SRow out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            Rat v = -coef * p[j].second;
            if (v != 0) out.emplace_back(p[j].first, v);
            ++j;
        } else {
            Rat v = r[i].second - coef * p[j].second;
            if (v != 0) out.emplace_back(r[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

struct SparseEchelon {
    std::map<int, SRow> pivots;  // leading column -> reduced row
};

// Reduce a row by leading terms against the current pivot set; if nonzero,
// install it as a new pivot. Leading column strictly increases during
// reduction, so this terminates.
void sparse_absorb(SparseEchelon& ech, SRow row) {
    while (!row.empty()) {
        int lead = row.front().first;
        auto it = ech.pivots.find(lead);
        if (it == ech.pivots.end()) {
            ech.pivots.emplace(lead, std::move(row));
            return;
        }
        Rat coef = row.front().second / it->second.front().second;
        row = row_axpy(row, coef, it->second);
    }
}

std::vector<int> row_order(const SparseRatMatrix& A) {
    std::vector<int> order(A.rows);
    for (int i = 0; i < A.rows; ++i) order[i] = i;
    std::vector<std::size_t> bits(A.rows, 0);
    for (int i = 0; i < A.rows; ++i)
        for (const auto& [c, v] : A.row[i]) bits[i] += rat_bits(v);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (A.row[x].size() != A.row[y].size()) return A.row[x].size() < A.row[y].size();
        if (bits[x] != bits[y]) return bits[x] < bits[y];
        return x < y;
    });
    return order;
}

}  // namespace

int sparse_rank(const SparseRatMatrix& A) {
    SparseEchelon ech;
    for (int i : row_order(A))
        if (!A.row[i].empty()) sparse_absorb(ech, A.row[i]);
    return static_cast<int>(ech.pivots.size());
}

RatMatrix sparse_kernel_basis(const SparseRatMatrix& A) {
    SparseEchelon ech;
    for (int i : row_order(A))
        if (!A.row[i].empty()) sparse_absorb(ech, A.row[i]);
    const int n = A.cols;
    const int r = static_cast<int>(ech.pivots.size());
    std::vector<bool> is_pivot(n, false);
    for (const auto& [c, _] : ech.pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RatMatrix K(n, n - r);
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        RatVec x(n, Rat(0));
        x[free_cols[f]] = 1;
        // pivots in decreasing column order; each pivot row touches only
        // columns >= its leading column
        for (auto it = ech.pivots.rbegin(); it != ech.pivots.rend(); ++it) {
            const SRow& row = it->second;
            Rat s = 0;
            for (std::size_t k = 1; k < row.size(); ++k)
                if (x[row[k].first] != 0) s += row[k].second * x[row[k].first];
            x[it->first] = -s / row.front().second;
        }
        for (int c = 0; c < n; ++c) K.at(c, static_cast<int>(f)) = x[c];
    }
    return K;
}

int float_rank_dense(std::vector<std::vector<double>> m, double rel_tol) {
    if (m.empty()) return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    double maxabs = 0;
    for (auto& r : m)
        for (double v : r) maxabs = std::max(maxabs, std::fabs(v));
    if (maxabs == 0) return 0;
    const double tol = rel_tol * maxabs;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        double best = tol;
        for (int r = rank; r < rows; ++r)
            if (std::fabs(m[r][c]) > best) {
                best = std::fabs(m[r][c]);
                piv = r;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int r = rank + 1; r < rows; ++r) {
            double f = m[r][c] / m[rank][c];
            if (f == 0) continue;
            for (int j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

namespace {

// One-sided Jacobi: orthogonalize column pairs until the off-diagonal Gram
// mass is negligible; the singular values are the column norms.
int svd_rank(std::vector<std::vector<double>> m, double rel_tol) {
    const int rows = static_cast<int>(m.size());
    const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
    if (rows == 0 || cols == 0) return 0;
    auto col_dot = [&](int i, int j) {
        double s = 0;
        for (int r = 0; r < rows; ++r) s += m[r][i] * m[r][j];
        return s;
    };
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool converged = true;
        for (int i = 0; i < cols - 1; ++i)
            for (int j = i + 1; j < cols; ++j) {
                double a = col_dot(i, i), b = col_dot(i, j), c = col_dot(j, j);
                if (std::fabs(b) <= 1e-18 * std::sqrt(a * c) || b == 0) continue;
                converged = false;
                double zeta = (c - a) / (2.0 * b);
                double t = (zeta >= 0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double cs = 1.0 / std::sqrt(1.0 + t * t);
                double sn = cs * t;
                for (int r = 0; r < rows; ++r) {
                    double vi = m[r][i], vj = m[r][j];
                    m[r][i] = cs * vi - sn * vj;
                    m[r][j] = sn * vi + cs * vj;
                }
            }
        if (converged) break;
    }
    std::vector<double> sv(cols, 0.0);
    double smax = 0;
    for (int j = 0; j < cols; ++j) {
        sv[j] = std::sqrt(col_dot(j, j));
        smax = std::max(smax, sv[j]);
    }
    if (smax == 0) return 0;
    int rank = 0;
    for (double s : sv)
        if (s > rel_tol * smax) ++rank;
    return rank;
}

}  // namespace

int float_rank(const SparseRatMatrix& A, double rel_tol) {
    // orient along the smaller dimension
    const SparseRatMatrix* use = &A;
    SparseRatMatrix t;
    if (A.rows < A.cols) {
        t = A.transpose();
        use = &t;
    }
    std::vector<std::vector<double>> m(use->rows, std::vector<double>(use->cols, 0.0));
    for (int r = 0; r < use->rows; ++r)
        for (const auto& [c, v] : use->row[r]) m[r][c] = rat_to_double(v);
    // singular-value rank for small matrices, pivoted elimination above that
    if (use->cols <= 300) return svd_rank(std::move(m), rel_tol);
    return float_rank_dense(std::move(m), rel_tol);
}

namespace {

// Exact semidefiniteness by diagonal-pivot Schur complements:
// S is PSD iff every diagonal entry is >= 0, any zero-diagonal index has a
// zero row, and the Schur complement at a positive diagonal pivot is PSD.
bool definite_check(RatMatrix S, bool strict) {
    const int n = S.rows;
    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;
    while (!active.empty()) {
        for (int i : active)
            if (S.at(i, i) < 0) return false;
        // drop zero-diagonal indices (their rows must vanish on the active set)
        std::vector<int> keep;
        for (int i : active) {
            if (S.at(i, i) == 0) {
                if (strict) return false;
                for (int j : active)
                    if (S.at(i, j) != 0) return false;
            } else {
                keep.push_back(i);
            }
        }
        active = std::move(keep);
        if (active.empty()) return true;
        int piv = active[0];
        std::size_t best = rat_bits(S.at(piv, piv));
        for (int i : active) {
            std::size_t b = rat_bits(S.at(i, i));
            if (b < best) {
                best = b;
                piv = i;
            }
        }
        const Rat d = S.at(piv, piv);
        std::vector<int> rest;
        for (int i : active)
            if (i != piv) rest.push_back(i);
        for (int i : rest)
            for (int j : rest) S.at(i, j) -= S.at(i, piv) * S.at(piv, j) / d;
        active = std::move(rest);
    }
    return true;
}

}  // namespace

bool is_psd_exact(const RatMatrix& S) { return definite_check(S, false); }
bool is_pd_exact(const RatMatrix& S) { return definite_check(S, true); }

Rat pencil_rayleigh(const RatMatrix& M, const RatMatrix& G, const RatVec& x) {
    Rat num = dot(x, M.apply(x));
    Rat den = dot(x, G.apply(x));
    if (den == 0) throw std::invalid_argument("Rayleigh quotient at G-null vector");
    return num / den;
}

std::pair<double, std::vector<double>> pencil_power_iteration(const RatMatrix& M, const RatMatrix& G,
                                                              int iters) {
    const int n = M.rows;
    std::vector<double> md = M.to_doubles(), gd;
    bool gid = G.is_identity();
    RatMatrix Ginv;
    std::vector<double> gi;
    if (!gid) {
        Ginv = rat_inverse(G);
        gi = Ginv.to_doubles();
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.01 * i;  // deterministic start
    double lambda = 0;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> y(n, 0.0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) y[r] += md[static_cast<std::size_t>(r) * n + c] * x[c];
        if (!gid) {
            std::vector<double> z(n, 0.0);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) z[r] += gi[static_cast<std::size_t>(r) * n + c] * y[c];
            y = std::move(z);
        }
        double nn = 0;
        for (double v : y) nn += v * v;
        nn = std::sqrt(nn);
        if (nn == 0) return {0.0, y};
        for (double& v : y) v /= nn;
        // Rayleigh estimate x^T M x / x^T G x
        double num = 0, den = 0;
        for (int r = 0; r < n; ++r) {
            double mr = 0, gr = 0;
            for (int c = 0; c < n; ++c) {
                mr += md[static_cast<std::size_t>(r) * n + c] * y[c];
                gr += (gid ? (r == c ? 1.0 : 0.0) : rat_to_double(G.at(r, c))) * y[c];
            }
            num += y[r] * mr;
            den += y[r] * gr;
        }
        lambda = den != 0 ? num / den : 0.0;
        x = std::move(y);
    }
    return {lambda, x};
}

Rat pencil_lambda_max_upper(const RatMatrix& M, const RatMatrix& G, double rel_tol, int max_iter) {
    auto [est, vec] = pencil_power_iteration(M, G, 200);
    // certified lower bound from the rationalized iterate
    RatVec xr(vec.size());
    bool nonzero = false;
    for (std::size_t i = 0; i < vec.size(); ++i) {
        xr[i] = rat_from_double(vec[i], 1u << 16);
        nonzero = nonzero || xr[i] != 0;
    }
    Rat lo = 0;
    if (nonzero && dot(xr, G.apply(xr)) != 0) lo = pencil_rayleigh(M, G, xr);
    if (lo < 0) lo = 0;
    // find a certified upper bound by doubling
    Rat hi = Rat(std::max(1L, static_cast<long>(std::ceil(std::max(est, 0.0) * 2 + 1))));
    int guard = 0;
    while (!is_psd_exact(hi * G - M)) {
        hi *= 2;
        if (++guard > 64) throw std::runtime_error("no eigenvalue upper bound found");
    }
    for (int it = 0; it < max_iter; ++it) {
        Rat width = hi - lo;
        Rat scale = hi > 1 ? hi : Rat(1);
        if (rat_to_double(width) <= rel_tol * rat_to_double(scale)) break;
        Rat mid = (lo + hi) / 2;
        if (is_psd_exact(mid * G - M))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace cochainlab
