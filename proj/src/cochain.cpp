#include "cochainlab/cochain.hpp"

#include <stdexcept>

namespace cochainlab {

namespace {

long checked_tuples(int N, int degree, long flat_cap, int dim) {
    long t = 1;
    for (int i = 0; i < degree; ++i) {
        t *= N;
        if (t * dim > flat_cap) throw std::length_error("cochain memory cap exceeded");
    }
    return t;
}

// odometer over G^n, leftmost index slowest
bool next_tuple(std::vector<int>& tuple, int N) {
    for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
        if (++tuple[i] < N) return true;
        tuple[i] = 0;
    }
    return false;
}

}  // namespace

long Cochain::tuples() const {
    long t = 1;
    for (int i = 0; i < degree; ++i) t *= group_order();
    return t;
}

long Cochain::tuple_index(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != degree) throw std::invalid_argument("tuple arity mismatch");
    long idx = 0;
    for (int g : tuple) {
        if (g < 0 || g >= group_order()) throw std::invalid_argument("tuple entry out of range");
        idx = idx * group_order() + g;
    }
    return idx;
}

RatVec Cochain::at(const std::vector<int>& tuple) const {
    long base = tuple_index(tuple) * module->dim;
    return RatVec(values.begin() + base, values.begin() + base + module->dim);
}

void Cochain::set(const std::vector<int>& tuple, const RatVec& v) {
    if (static_cast<int>(v.size()) != module->dim) throw std::invalid_argument("value dimension mismatch");
    long base = tuple_index(tuple) * module->dim;
    for (int i = 0; i < module->dim; ++i) values[base + i] = v[i];
}

bool Cochain::is_zero() const {
    for (const auto& v : values)
        if (v != 0) return false;
    return true;
}

Cochain operator+(const Cochain& x, const Cochain& y) {
    if (x.module.get() != y.module.get() || x.degree != y.degree)
        throw std::invalid_argument("cochain mismatch");
    Cochain z = x;
    for (std::size_t i = 0; i < z.values.size(); ++i) z.values[i] += y.values[i];
    return z;
}

Cochain operator-(const Cochain& x, const Cochain& y) {
    if (x.module.get() != y.module.get() || x.degree != y.degree)
        throw std::invalid_argument("cochain mismatch");
    Cochain z = x;
    for (std::size_t i = 0; i < z.values.size(); ++i) z.values[i] -= y.values[i];
    return z;
}

bool operator==(const Cochain& x, const Cochain& y) {
    return x.module.get() == y.module.get() && x.degree == y.degree && x.values == y.values;
}

Cochain zero_cochain(const ModulePtr& M, int degree) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    Cochain c;
    c.module = M;
    c.degree = degree;
    c.values.assign(checked_tuples(M->group->n, degree, CochainCaps{}.flat_cap, M->dim) * M->dim, Rat(0));
    return c;
}

Cochain cochain_from_vector(const ModulePtr& M, RatVec x) {
    if (static_cast<int>(x.size()) != M->dim) throw std::invalid_argument("dimension mismatch");
    Cochain c;
    c.module = M;
    c.degree = 0;
    c.values = std::move(x);
    return c;
}

Cochain random_cochain(const ModulePtr& M, int degree, DetRng& rng) {
    Cochain c = zero_cochain(M, degree);
    for (auto& v : c.values) v = rng.small_rat();
    return c;
}

Cochain scale_cochain(const Rat& s, const Cochain& c) {
    Cochain z = c;
    for (auto& v : z.values) v *= s;
    return z;
}

Cochain postcompose(const RatMatrix& A, const Cochain& c) {
    if (A.cols != c.module->dim || A.rows != c.module->dim)
        throw std::invalid_argument("matrix shape mismatch");
    Cochain z = c;
    const int d = c.module->dim;
    const long t = c.tuples();
    for (long i = 0; i < t; ++i) {
        RatVec v(c.values.begin() + i * d, c.values.begin() + (i + 1) * d);
        RatVec w = A.apply(v);
        for (int j = 0; j < d; ++j) z.values[i * d + j] = w[j];
    }
    return z;
}

Cochain apply_coboundary(const Cochain& phi, const CochainCaps& caps) {
    const ModulePtr& M = phi.module;
    const int N = M->group->n;
    const int n = phi.degree;
    const int d = M->dim;
    checked_tuples(N, n + 1, caps.flat_cap, d);
    Cochain out = zero_cochain(M, n + 1);
    std::vector<int> tup(n + 1, 0);
    const Rat sign_last = (n % 2 == 0) ? Rat(1) : Rat(-1);
    do {
        RatVec v(d, Rat(0));
        {
            // -π(g₁)·φ(g₂,…,g_{n+1})
            std::vector<int> rest(tup.begin() + 1, tup.end());
            RatVec w = M->mat(tup[0]).apply(phi.at(rest));
            for (int i = 0; i < d; ++i) v[i] -= w[i];
        }
        {
            // (−1)^n φ(g₁,…,g_n)
            std::vector<int> head(tup.begin(), tup.end() - 1);
            RatVec w = phi.at(head);
            for (int i = 0; i < d; ++i) v[i] += sign_last * w[i];
        }
        for (int i = 1; i <= n; ++i) {
            // −(−1)^i φ(g₁,…,g_{i−1}, g_i·g_{i+1}, g_{i+2},…,g_{n+1})
            std::vector<int> merged;
            merged.reserve(n);
            for (int j = 0; j < i - 1; ++j) merged.push_back(tup[j]);
            merged.push_back(M->group->mul(tup[i - 1], tup[i]));
            for (int j = i + 1; j <= n; ++j) merged.push_back(tup[j]);
            RatVec w = phi.at(merged);
            const Rat s = (i % 2 == 0) ? Rat(-1) : Rat(1);
            for (int j = 0; j < d; ++j) v[j] += s * w[j];
        }
        out.set(tup, v);
    } while (next_tuple(tup, N));
    return out;
}

bool is_cocycle(const Cochain& phi, const CochainCaps& caps) {
    return apply_coboundary(phi, caps).is_zero();
}

CoboundaryMatrix coboundary_matrix(const ModulePtr& M, int n, const CochainCaps& caps) {
    const int N = M->group->n;
    const int d = M->dim;
    long rows_t = checked_tuples(N, n + 1, caps.flat_cap, d);
    long cols_t = 1;
    for (int i = 0; i < n; ++i) cols_t *= N;
    CoboundaryMatrix cb;
    cb.degree = n;
    cb.mat = SparseRatMatrix(static_cast<int>(rows_t * d), static_cast<int>(cols_t * d));
    std::vector<int> tup(n + 1, 0);
    const Rat sign_last = (n % 2 == 0) ? Rat(1) : Rat(-1);
    long row_tuple = 0;
    auto col_index = [&](const std::vector<int>& t) {
        long idx = 0;
        for (int g : t) idx = idx * N + g;
        return idx * d;
    };
    do {
        const long r0 = row_tuple * d;
        {
            std::vector<int> rest(tup.begin() + 1, tup.end());
            const long c0 = col_index(rest);
            const RatMatrix& A = M->mat(tup[0]);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    if (A.at(i, j) != 0) cb.mat.add(static_cast<int>(r0 + i), static_cast<int>(c0 + j), -A.at(i, j));
        }
        {
            std::vector<int> head(tup.begin(), tup.end() - 1);
            const long c0 = col_index(head);
            for (int i = 0; i < d; ++i) cb.mat.add(static_cast<int>(r0 + i), static_cast<int>(c0 + i), sign_last);
        }
        for (int i = 1; i <= n; ++i) {
            std::vector<int> merged;
            merged.reserve(n);
            for (int j = 0; j < i - 1; ++j) merged.push_back(tup[j]);
            merged.push_back(M->group->mul(tup[i - 1], tup[i]));
            for (int j = i + 1; j <= n; ++j) merged.push_back(tup[j]);
            const long c0 = col_index(merged);
            const Rat s = (i % 2 == 0) ? Rat(-1) : Rat(1);
            for (int j = 0; j < d; ++j) cb.mat.add(static_cast<int>(r0 + j), static_cast<int>(c0 + j), s);
        }
        ++row_tuple;
    } while (next_tuple(tup, N));
    cb.mat.finalize();
    return cb;
}

namespace {

int sparse_rank_best_orientation(const SparseRatMatrix& A) {
    if (A.rows <= A.cols) return sparse_rank(A);
    return sparse_rank(A.transpose());
}

}  // namespace

CohomologyReport cohomology(const ModulePtr& M, int n, bool want_bases, bool float_check,
                            const CochainCaps& caps, long basis_cap) {
    if (n < 0) throw std::invalid_argument("negative degree");
    if (n > caps.degree_cap) throw std::length_error("degree cap exceeded");
    CohomologyReport rep;
    rep.degree = n;
    const int N = M->group->n;
    rep.dim_C = checked_tuples(N, n, caps.flat_cap, M->dim) * M->dim;
    CoboundaryMatrix up = coboundary_matrix(M, n, caps);  // ∂^{n+1}
    int rank_up = sparse_rank_best_orientation(up.mat);
    rep.dim_Z = static_cast<int>(rep.dim_C) - rank_up;
    std::optional<CoboundaryMatrix> down;
    if (n == 0) {
        rep.dim_B = 0;
    } else {
        down = coboundary_matrix(M, n - 1, caps);
        rep.dim_B = sparse_rank_best_orientation(down->mat);
    }
    rep.dim_H = rep.dim_Z - rep.dim_B;
    if (want_bases && rep.dim_C <= basis_cap) {
        rep.basis_Z = sparse_kernel_basis(up.mat);
        if (n == 0) {
            rep.basis_B = RatMatrix(static_cast<int>(rep.dim_C), 0);
        } else {
            rep.basis_B = column_space_basis(down->mat.to_dense());
        }
        // B ⊆ Z: every coboundary must be killed by ∂^{n+1}
        for (int c = 0; c < rep.basis_B->cols; ++c)
            if (!vec_is_zero(up.mat.apply(rep.basis_B->col(c))))
                throw std::logic_error("coboundary basis vector is not a cocycle");
        if (rep.basis_Z->cols != rep.dim_Z || rep.basis_B->cols != rep.dim_B)
            throw std::logic_error("basis dimensions disagree with ranks");
    }
    if (float_check) {
        rep.float_checked = true;
        int fup = float_rank(up.mat);
        int fdown = n == 0 ? 0 : float_rank(down->mat);
        rep.float_agrees = (fup == rank_up) && (fdown == rep.dim_B);
    }
    return rep;
}

namespace {

RatVec extension_eval(const Cochain& phi, const std::vector<AlgebraElement>& args, bool affine_guard) {
    if (static_cast<int>(args.size()) != phi.degree)
        throw std::invalid_argument("argument count must match the degree");
    for (const auto& a : args) {
        if (a.group.get() != phi.module->group.get()) throw std::invalid_argument("mismatched group");
        if (affine_guard && a.augmentation() != 1)
            throw std::domain_error("argument outside the group affine space (augmentation != 1)");
    }
    const int d = phi.module->dim;
    RatVec acc(d, Rat(0));
    std::vector<int> tuple(args.size(), 0);
    // recursive walk over support product
    auto rec = [&](auto&& self, std::size_t slot, const Rat& coef) -> void {
        if (coef == 0) return;
        if (slot == args.size()) {
            RatVec v = phi.at(tuple);
            for (int i = 0; i < d; ++i) acc[i] += coef * v[i];
            return;
        }
        for (const auto& [g, w] : args[slot].coeffs) {
            tuple[slot] = g;
            self(self, slot + 1, coef * w);
        }
    };
    rec(rec, 0, Rat(1));
    return acc;
}

}  // namespace

RatVec multiaffine_eval(const Cochain& phi, const std::vector<AlgebraElement>& args) {
    return extension_eval(phi, args, true);
}

RatVec multilinear_eval(const Cochain& phi, const std::vector<AlgebraElement>& args) {
    return extension_eval(phi, args, false);
}

Cochain restriction(const Cochain& phi, const RestrictedModule& F) {
    Cochain out = zero_cochain(F.module, phi.degree);
    const int m = F.module->group->n;
    std::vector<int> tup(phi.degree, 0);
    if (phi.degree == 0) {
        out.values = phi.values;
        return out;
    }
    do {
        std::vector<int> parent(tup.size());
        for (std::size_t i = 0; i < tup.size(); ++i) parent[i] = F.sub.to_parent[tup[i]];
        out.set(tup, phi.at(parent));
    } while (next_tuple(tup, m));
    return out;
}

Cochain cochain_from_flat(const ModulePtr& M, int degree, const RatVec& flat) {
    Cochain c = zero_cochain(M, degree);
    if (flat.size() != c.values.size()) throw std::invalid_argument("flat size mismatch");
    c.values = flat;
    return c;
}

}  // namespace cochainlab
