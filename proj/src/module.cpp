#include "cochainlab/module.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cochainlab {

namespace {

bool is_signed_permutation(const RatMatrix& A) {
    if (A.rows != A.cols) return false;
    std::vector<int> col_hits(A.cols, 0);
    for (int r = 0; r < A.rows; ++r) {
        int hits = 0;
        for (int c = 0; c < A.cols; ++c) {
            const Rat& v = A.at(r, c);
            if (v == 0) continue;
            if (v != 1 && v != -1) return false;
            ++hits;
            ++col_hits[c];
        }
        if (hits != 1) return false;
    }
    for (int c : col_hits)
        if (c != 1) return false;
    return true;
}

void verify_module(const BanachModule& M) {
    const FiniteGroup& G = *M.group;
    if (static_cast<int>(M.mats.size()) != G.n) throw std::invalid_argument("matrix per element required");
    for (const auto& A : M.mats)
        if (A.rows != M.dim || A.cols != M.dim) throw std::invalid_argument("matrix dimension mismatch");
    if (!M.mats[G.identity].is_identity())
        throw std::invalid_argument("identity element must act as the identity matrix");
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b)
            if (!(M.mats[a] * M.mats[b] == M.mats[G.mul(a, b)]))
                throw std::invalid_argument("matrices are not a group homomorphism");
    // isometry criterion: p = 2 accepts any exact Gram isometry, other p only
    // signed permutations (the ℓ^p isometry group for p ≠ 2)
    if (M.p.is_two()) {
        for (int g = 0; g < G.n; ++g)
            if (!(M.mats[g].transpose() * M.gram * M.mats[g] == M.gram))
                throw std::invalid_argument("matrix is not an isometry for the p=2 norm");
    } else {
        if (!M.gram_identity)
            throw std::invalid_argument("Gram norms are only supported at p = 2");
        for (int g = 0; g < G.n; ++g)
            if (!is_signed_permutation(M.mats[g]))
                throw std::invalid_argument("matrix is not an isometry for p != 2 (signed permutation required)");
    }
}

}  // namespace

Rat BanachModule::norm2_squared(const RatVec& x) const {
    if (!p.is_two()) throw std::domain_error("exact squared norms require p = 2");
    if (gram_identity) {
        Rat s = 0;
        for (const auto& v : x) s += v * v;
        return s;
    }
    return dot(x, gram.apply(x));
}

double BanachModule::norm(const std::vector<double>& x) const {
    if (gram_identity) return vec_pnorm(x, p);
    double s = 0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) s += x[r] * rat_to_double(gram.at(r, c)) * x[c];
    return std::sqrt(std::max(0.0, s));
}

double BanachModule::norm(const RatVec& x) const {
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = rat_to_double(x[i]);
    return norm(d);
}

double module_vec_norm(const BanachModule& M, const RatVec& x) { return M.norm(x); }

ModulePtr build_module_from_matrices(const GroupPtr& G, std::vector<RatMatrix> mats, const PNorm& p,
                                     RatMatrix gram) {
    auto M = std::make_shared<BanachModule>();
    M->group = G;
    M->dim = mats.empty() ? 0 : mats[0].rows;
    M->mats = std::move(mats);
    M->p = p;
    if (gram.rows == 0) {
        M->gram = RatMatrix::identity(M->dim);
        M->gram_identity = true;
    } else {
        M->gram = std::move(gram);
        M->gram_identity = M->gram.is_identity();
        if (!is_pd_exact(M->gram)) throw std::invalid_argument("Gram matrix must be positive definite");
    }
    verify_module(*M);
    return M;
}

ModulePtr build_regular_module(const GroupPtr& G, const PNorm& p) {
    std::vector<RatMatrix> mats(G->n);
    for (int g = 0; g < G->n; ++g) {
        RatMatrix A(G->n, G->n);
        for (int h = 0; h < G->n; ++h) A.at(G->mul(g, h), h) = 1;  // e_h -> e_{gh}
        mats[g] = std::move(A);
    }
    return build_module_from_matrices(G, std::move(mats), p);
}

ModulePtr build_permutation_module(const GroupPtr& G, const std::vector<std::vector<int>>& action,
                                   const PNorm& p) {
    if (static_cast<int>(action.size()) != G->n)
        throw std::invalid_argument("permutation action must list every element");
    const int k = action.empty() ? 0 : static_cast<int>(action[0].size());
    std::vector<RatMatrix> mats(G->n);
    for (int g = 0; g < G->n; ++g) {
        if (static_cast<int>(action[g].size()) != k) throw std::invalid_argument("ragged action table");
        RatMatrix A(k, k);
        for (int j = 0; j < k; ++j) {
            int img = action[g][j];
            if (img < 0 || img >= k) throw std::invalid_argument("action image out of range");
            A.at(img, j) = 1;
        }
        mats[g] = std::move(A);
    }
    return build_module_from_matrices(G, std::move(mats), p);
}

ModulePtr build_matrix_module(const GroupPtr& G, const std::map<int, RatMatrix>& generator_mats,
                              const PNorm& p) {
    if (generator_mats.empty()) throw std::invalid_argument("no generator matrices");
    const int d = generator_mats.begin()->second.rows;
    std::vector<RatMatrix> mats(G->n);
    std::vector<char> known(G->n, 0);
    mats[G->identity] = RatMatrix::identity(d);
    known[G->identity] = 1;
    for (const auto& [g, A] : generator_mats) {
        if (g < 0 || g >= G->n) throw std::invalid_argument("generator index out of range");
        if (A.rows != d || A.cols != d) throw std::invalid_argument("generator matrix shape mismatch");
        if (known[g] && !(mats[g] == A))
            throw std::invalid_argument("generator matrices inconsistent with relations");
        mats[g] = A;
        known[g] = 1;
    }
    // close under products until stable
    bool grew = true;
    while (grew) {
        grew = false;
        for (int a = 0; a < G->n; ++a) {
            if (!known[a]) continue;
            for (const auto& [g, A] : generator_mats) {
                int b = G->mul(g, a);
                RatMatrix prod = A * mats[a];
                if (!known[b]) {
                    mats[b] = std::move(prod);
                    known[b] = 1;
                    grew = true;
                } else if (!(mats[b] == prod)) {
                    throw std::invalid_argument("generator matrices inconsistent with relations");
                }
            }
        }
    }
    for (int g = 0; g < G->n; ++g)
        if (!known[g]) throw std::invalid_argument("generator matrices do not generate the group");
    return build_module_from_matrices(G, std::move(mats), p);
}

ModulePtr trivial_module(const GroupPtr& G, int dim, const PNorm& p) {
    std::vector<RatMatrix> mats(G->n, RatMatrix::identity(dim));
    return build_module_from_matrices(G, std::move(mats), p);
}

RatMatrix apply_algebra(const BanachModule& M, const AlgebraElement& xi) {
    if (xi.group.get() != M.group.get()) throw std::invalid_argument("mismatched group");
    RatMatrix A(M.dim, M.dim);
    for (const auto& [g, v] : xi.coeffs) A = A + v * M.mat(g);
    return A;
}

Decomposition invariants_and_decomposition(const BanachModule& M, const Subgroup& H) {
    Decomposition D;
    std::vector<int> gens = generating_set(H);
    if (gens.empty()) {
        D.invariant_basis = RatMatrix::identity(M.dim);
        D.complement_basis = RatMatrix(M.dim, 0);
        D.projector = RatMatrix::identity(M.dim);
        return D;
    }
    RatMatrix stacked(static_cast<int>(gens.size()) * M.dim, M.dim);
    int row = 0;
    for (int h : gens) {
        RatMatrix diff = RatMatrix::identity(M.dim) - M.mat(h);
        for (int r = 0; r < M.dim; ++r, ++row)
            for (int c = 0; c < M.dim; ++c) stacked.at(row, c) = diff.at(r, c);
    }
    D.invariant_basis = kernel_basis(stacked);
    D.projector = apply_algebra(M, uniform_average(M.group, H.elements));
    D.complement_basis = kernel_basis(D.projector);
    // Alaoglu–Birkhoff invariants, checked here because every construction
    // relies on them downstream
    if (!(D.projector * D.projector == D.projector)) throw std::logic_error("projector not idempotent");
    if (!same_column_space(D.projector, D.invariant_basis))
        throw std::logic_error("projector image differs from X^H");
    if (D.invariant_basis.cols + D.complement_basis.cols != M.dim)
        throw std::logic_error("X^H ⊕ X_H does not span");
    if (!(D.projector * D.complement_basis).is_zero())
        throw std::logic_error("projector does not annihilate X_H");
    return D;
}

namespace {

Rat max_abs_col_sum(const RatMatrix& A) {
    Rat best = 0;
    for (int c = 0; c < A.cols; ++c) {
        Rat s = 0;
        for (int r = 0; r < A.rows; ++r) s += abs(A.at(r, c));
        if (s > best) best = s;
    }
    return best;
}

Rat max_abs_row_sum(const RatMatrix& A) {
    Rat best = 0;
    for (int r = 0; r < A.rows; ++r) {
        Rat s = 0;
        for (int c = 0; c < A.cols; ++c) s += abs(A.at(r, c));
        if (s > best) best = s;
    }
    return best;
}

std::vector<double> jmap(const std::vector<double>& v, double e) {
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double m = std::pow(std::fabs(v[i]), e);
        w[i] = v[i] >= 0 ? m : -m;
    }
    return w;
}

// Boyd power-type iteration for ‖A‖_p, returning the best ratio found and the
// final iterate.
std::pair<double, std::vector<double>> boyd_lower(const RatMatrix& A, const PNorm& p,
                                                  std::vector<double> x, int iters) {
    const double pe = p.d();
    double best = 0;
    for (int it = 0; it < iters; ++it) {
        double nx = vec_pnorm(x, p);
        if (nx == 0) break;
        for (auto& v : x) v /= nx;
        auto y = apply_double(A, x);
        best = std::max(best, vec_pnorm(y, p));
        auto z = apply_double(A.transpose(), jmap(y, pe - 1.0));
        x = jmap(z, 1.0 / (pe - 1.0));
        if (vec_pnorm(x, p) == 0) break;
    }
    return {best, x};
}

// Collatz–Wielandt-type upper bound for a nonnegative matrix B and positive x:
// ‖B‖_p^p ≤ max_j (Bᵀ(Bx)^{p-1})_j / x_j^{p-1}.
double cw_upper_nonneg(const RatMatrix& B, const PNorm& p, const std::vector<double>& xpos) {
    const double pe = p.d();
    auto y = apply_double(B, xpos);
    for (auto& v : y) v = std::pow(std::max(v, 0.0), pe - 1.0);
    auto z = apply_double(B.transpose(), y);
    double best = 0;
    for (std::size_t j = 0; j < xpos.size(); ++j) best = std::max(best, z[j] / std::pow(xpos[j], pe - 1.0));
    return std::pow(best, 1.0 / pe);
}

}  // namespace

OperatorNormBounds operator_norm(const RatMatrix& A, const PNorm& p, const RatMatrix* gram,
                                 std::uint64_t seed) {
    OperatorNormBounds out;
    for (const auto& v : A.a)
        (void)v;  // entries are exact rationals; non-finite inputs cannot occur
    const bool gid = gram == nullptr || gram->is_identity();
    if (p.is_one() || p.is_inf()) {
        if (!gid) throw std::domain_error("Gram norms are p=2 only");
        Rat v = p.is_one() ? max_abs_col_sum(A) : max_abs_row_sum(A);
        out.lower = out.upper = rat_to_double(v);
        out.certified = true;
        out.method = p.is_one() ? "exact max column sum" : "exact max row sum";
        return out;
    }
    if (p.is_two()) {
        RatMatrix G = gid ? RatMatrix::identity(A.cols) : *gram;
        RatMatrix M = A.transpose() * G * A;
        auto [est, vec] = pencil_power_iteration(M, G, 300);
        RatVec xr(vec.size());
        for (std::size_t i = 0; i < vec.size(); ++i) xr[i] = rat_from_double(vec[i], 1u << 16);
        Rat lo(0);
        if (!vec_is_zero(xr) && dot(xr, G.apply(xr)) != 0) {
            lo = pencil_rayleigh(M, G, xr);
            if (lo < 0) lo = 0;
        }
        Rat hi = pencil_lambda_max_upper(M, G, 1e-9);
        out.lower = std::sqrt(rat_to_double(lo));
        out.upper = std::sqrt(rat_to_double(hi)) * (1 + 1e-14);
        out.certified = true;
        out.method = "largest singular value (exact Rayleigh / PSD bisection)";
        return out;
    }
    if (!gid) throw std::domain_error("Gram norms are p=2 only");
    // general p: multistart Boyd iteration for the lower bound
    DetRng rng(seed);
    const int n = A.cols;
    std::vector<std::vector<double>> starts;
    for (int i = 0; i < std::min(n, 8); ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        starts.push_back(std::move(e));
    }
    starts.emplace_back(n, 1.0);
    for (int s = 0; s < 4; ++s) {
        std::vector<double> r(n);
        for (auto& v : r) v = 2 * rng.unit() - 1;
        starts.push_back(std::move(r));
    }
    double lower = 0;
    std::vector<double> best_iter(n, 1.0);
    for (auto& s : starts) {
        auto [val, it] = boyd_lower(A, p, s, 60);
        if (val > lower) {
            lower = val;
            best_iter = it;
        }
    }
    // upper bounds: Riesz–Thorin interpolation plus Collatz–Wielandt on |A|
    double pe = p.d();
    double n1 = rat_to_double(max_abs_col_sum(A));
    double ninf = rat_to_double(max_abs_row_sum(A));
    double interp = std::pow(n1, 1.0 / pe) * std::pow(ninf, 1.0 - 1.0 / pe);
    RatMatrix absA(A.rows, A.cols);
    for (int r = 0; r < A.rows; ++r)
        for (int c = 0; c < A.cols; ++c) absA.at(r, c) = abs(A.at(r, c));
    std::vector<double> xpos(n);
    for (int i = 0; i < n; ++i) xpos[i] = std::fabs(best_iter[i]) + 1e-9;
    auto [lb_abs, it_abs] = boyd_lower(absA, p, std::vector<double>(n, 1.0), 60);
    (void)lb_abs;
    for (int i = 0; i < n; ++i) xpos[i] = std::max(xpos[i], std::fabs(it_abs[i]) + 1e-9);
    double cw = cw_upper_nonneg(absA, p, xpos);
    out.lower = lower;
    out.upper = std::min(interp, cw);
    out.certified = false;
    out.method = "multistart power iteration / interpolation + Collatz-Wielandt on |A|";
    return out;
}

bool norm_strictly_below_one(const RatMatrix& A, const PNorm& p, const RatMatrix* gram) {
    const bool gid = gram == nullptr || gram->is_identity();
    if (p.is_one()) return gid && max_abs_col_sum(A) < 1;
    if (p.is_inf()) return gid && max_abs_row_sum(A) < 1;
    if (p.is_two()) {
        RatMatrix G = gid ? RatMatrix::identity(A.cols) : *gram;
        return is_pd_exact(G - A.transpose() * G * A);
    }
    // interpolation: ‖A‖_p ≤ ‖A‖₁^{1/p}‖A‖_∞^{1-1/p}; both < 1 certifies any p
    return gid && max_abs_col_sum(A) < 1 && max_abs_row_sum(A) < 1;
}

std::optional<int> spectral_radius_below_one(const RatMatrix& A, const PNorm& p,
                                             const RatMatrix* gram, int max_power) {
    RatMatrix B = A;
    int m = 1;
    while (m <= max_power) {
        if (norm_strictly_below_one(B, p, gram)) return m;
        B = B * B;
        m *= 2;
    }
    return std::nullopt;
}

AlmostInvariantReport almost_invariant_check(const BanachModule& M, const Subgroup& H) {
    AlmostInvariantReport rep;
    rep.convexity_warning = !M.p.strictly_convex();
    Decomposition D = invariants_and_decomposition(M, H);
    rep.invariant_dim = D.invariant_basis.cols;
    if (rep.invariant_dim > 0) {
        rep.has_invariant_unit = true;
        return rep;
    }
    AlgebraElement xi = uniform_average(M.group, H.elements);
    RatMatrix P = apply_algebra(M, xi);
    // X^H = 0 forces the averaging operator to vanish identically
    if (!P.is_zero()) throw std::logic_error("averaging operator nonzero with X^H = 0");
    // cross-checks of the invertibility lemma: I - π(ξ) has full exact rank,
    // the norm bound is certified, and ξ has full support on H
    if (rat_rank(RatMatrix::identity(M.dim) - P) != M.dim)
        throw std::logic_error("I - π(ξ) unexpectedly singular");
    if (static_cast<int>(xi.coeffs.size()) != H.order()) throw std::logic_error("witness support mismatch");
    rep.gap_witness = xi;
    rep.norm_bound = 0.0;
    return rep;
}

QuotientModule quotient_module(const ModulePtr& M, const Subgroup& H) {
    QuotientModule Q;
    Q.base = M;
    Decomposition D = invariants_and_decomposition(*M, H);
    Q.subspace_basis = D.invariant_basis;
    const int d = M->dim;
    const int k = Q.subspace_basis.cols;
    // the induced action needs the subspace to be invariant under all of G
    for (int g = 0; g < M->group->n; ++g)
        if (k > 0 && !columns_contained(M->mat(g) * Q.subspace_basis, Q.subspace_basis))
            throw std::domain_error("X^H is not G-invariant; quotient action undefined");
    // complement by greedy coordinate extension
    RatMatrix C(d, 0);
    {
        RatMatrix cur = Q.subspace_basis;
        int rank = rat_rank(cur);
        for (int j = 0; j < d && rank < d; ++j) {
            RatMatrix e(d, 1);
            e.at(j, 0) = 1;
            RatMatrix ext = cur.hcat(e);
            if (rat_rank(ext) > rank) {
                cur = ext;
                C = C.hcat(e);
                ++rank;
            }
        }
    }
    Q.complement_basis = C;
    Q.quotient_dim = C.cols;
    RatMatrix full = C.hcat(Q.subspace_basis);
    Q.full_inverse_ = rat_inverse(full);
    Q.action.resize(M->group->n);
    for (int g = 0; g < M->group->n; ++g) {
        RatMatrix coords = Q.full_inverse_ * (M->mat(g) * C);
        RatMatrix Ag(Q.quotient_dim, Q.quotient_dim);
        for (int r = 0; r < Q.quotient_dim; ++r)
            for (int c = 0; c < Q.quotient_dim; ++c) Ag.at(r, c) = coords.at(r, c);
        Q.action[g] = std::move(Ag);
    }
    // homomorphism check on the induced matrices
    for (int a = 0; a < M->group->n; ++a)
        for (int b = 0; b < M->group->n; ++b)
            if (!(Q.action[a] * Q.action[b] == Q.action[M->group->mul(a, b)]))
                throw std::logic_error("quotient action is not a homomorphism");
    if (M->p.is_two() && k > 0) {
        RatMatrix Bt = Q.subspace_basis.transpose();
        RatMatrix gramB = Bt * M->gram * Q.subspace_basis;
        Q.proj_ = Q.subspace_basis * rat_inverse(gramB) * Bt * M->gram;
        Q.have_proj_ = true;
    } else if (M->p.is_two()) {
        Q.proj_ = RatMatrix::zero(d, d);
        Q.have_proj_ = true;
    }
    return Q;
}

Rat QuotientModule::quotient_norm2_squared(const RatVec& x) const {
    if (!have_proj_) throw std::domain_error("exact quotient norms require p = 2");
    RatVec v = x - proj_.apply(x);
    return base->norm2_squared(v);
}

double QuotientModule::quotient_norm(const RatVec& x, double tol, int max_iter) const {
    if (have_proj_) return std::sqrt(rat_to_double(quotient_norm2_squared(x)));
    const int k = subspace_basis.cols;
    std::vector<double> xd(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xd[i] = rat_to_double(x[i]);
    if (k == 0) return base->norm(xd);
    // minimize ‖x + Bz‖_p by subgradient descent (the paper gives no
    // algorithm; tolerance and cap per the module contract)
    std::vector<double> z(k, 0.0);
    std::vector<double> bd = subspace_basis.to_doubles();
    auto value = [&](const std::vector<double>& zz) {
        std::vector<double> v = xd;
        for (int r = 0; r < subspace_basis.rows; ++r)
            for (int c = 0; c < k; ++c) v[r] += bd[static_cast<std::size_t>(r) * k + c] * zz[c];
        return std::pair{base->norm(v), v};
    };
    double best = value(z).first;
    std::vector<double> zbest = z;
    double step0 = std::max(1.0, best);
    for (int t = 1; t <= max_iter; ++t) {
        auto [val, v] = value(z);
        if (val < best) {
            best = val;
            zbest = z;
            if (best < tol) break;
        }
        auto w = duality_vector(v, base->p);
        std::vector<double> gz(k, 0.0);
        for (int r = 0; r < subspace_basis.rows; ++r)
            for (int c = 0; c < k; ++c) gz[c] += bd[static_cast<std::size_t>(r) * k + c] * w[r];
        double step = step0 / std::sqrt(static_cast<double>(t));
        for (int c = 0; c < k; ++c) z[c] -= step * gz[c];
    }
    return best;
}

RatVec QuotientModule::project_to_quotient(const RatVec& x) const {
    RatVec coords = full_inverse_.apply(x);
    return RatVec(coords.begin(), coords.begin() + quotient_dim);
}

RatVec QuotientModule::lift(const RatVec& qcoords) const { return complement_basis.apply(qcoords); }

ConvexityReport convexity_modulus(const PNorm& p, double epsilon, int dim, const std::string& mode,
                                  std::uint64_t seed) {
    if (epsilon < 0 || epsilon > 2) throw std::invalid_argument("epsilon outside [0,2]");
    if (dim < 2) throw std::invalid_argument("dim must be at least 2");
    ConvexityReport rep;
    rep.p = p;
    rep.epsilon = epsilon;
    const double t_dual = 2.0 - epsilon;
    if (p.is_two() && mode != "sampled") {
        rep.delta_estimate = 1.0 - std::sqrt(std::max(0.0, 1.0 - epsilon * epsilon / 4.0));
        // parallelogram law at unit vectors: ω(t)² = 4 − t²
        rep.omega_estimate = std::sqrt(std::max(0.0, 4.0 - t_dual * t_dual));
        rep.method = "exact";
        return rep;
    }
    if (mode != "sampled" && mode != "auto")
        throw std::invalid_argument("unknown convexity mode: " + mode);
    // sampled lower estimate of δ(ε): maximize ‖(x+y)/2‖ over unit pairs with
    // ‖x−y‖ ≥ ε
    DetRng rng(seed);
    auto normalize = [&](std::vector<double>& v) {
        double n = vec_pnorm(v, p);
        if (n > 0)
            for (auto& x : v) x /= n;
    };
    auto repair = [&](std::vector<double>& x, std::vector<double>& y) {
        for (int round = 0; round < 40; ++round) {
            std::vector<double> d(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
            double sep = vec_pnorm(d, p);
            if (sep >= epsilon * (1 - 1e-12)) return true;
            if (sep < 1e-12) {
                y[0] += epsilon;
            } else {
                double f = 1.02 * epsilon / sep;
                for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] - f * d[i];
            }
            normalize(y);
        }
        std::vector<double> d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
        return vec_pnorm(d, p) >= epsilon * (1 - 1e-9);
    };
    std::vector<std::pair<std::vector<double>, std::vector<double>>> starts;
    // flat-segment witness pairs (tight for ℓ¹) and coordinate pairs
    for (int j = 1; j < std::min(dim, 4); ++j) {
        std::vector<double> x(dim, 0.0), y(dim, 0.0);
        x[0] = 1.0;
        y[0] = 1.0 - epsilon / 2.0;
        y[j] = epsilon / 2.0;
        starts.push_back({x, y});
        std::vector<double> u(dim, 0.0), v(dim, 0.0);
        u[0] = 1.0;
        v[j] = 1.0;
        starts.push_back({u, v});
    }
    for (int s = 0; s < 8; ++s) {
        std::vector<double> x(dim), y(dim);
        for (auto& v : x) v = 2 * rng.unit() - 1;
        for (auto& v : y) v = 2 * rng.unit() - 1;
        starts.push_back({x, y});
    }
    double best_mid = 0;
    for (auto& [x0, y0] : starts) {
        auto x = x0, y = y0;
        normalize(x);
        normalize(y);
        if (!repair(x, y)) continue;
        for (int it = 0; it < 200; ++it) {
            std::vector<double> mid(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) mid[i] = 0.5 * (x[i] + y[i]);
            double mv = vec_pnorm(mid, p);
            if (mv > best_mid) best_mid = mv;
            auto w = duality_vector(mid, p);
            double step = 0.1 / (1.0 + it * 0.05);
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] += step * 0.5 * w[i];
                y[i] += step * 0.5 * w[i];
            }
            normalize(x);
            normalize(y);
            if (!repair(x, y)) break;
        }
    }
    rep.delta_estimate = std::clamp(1.0 - best_mid, 0.0, 1.0);
    // sampled ω(t) at the dual parameter t = 2 − ε: maximize the separation
    // subject to ‖x+y‖ ≥ t inside the unit ball
    double best_sep = 0;
    for (int s = 0; s < 12; ++s) {
        std::vector<double> x(dim), y(dim);
        for (auto& v : x) v = 2 * rng.unit() - 1;
        for (auto& v : y) v = 2 * rng.unit() - 1;
        normalize(x);
        normalize(y);
        for (int it = 0; it < 200; ++it) {
            std::vector<double> sum(x.size()), diff(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                sum[i] = x[i] + y[i];
                diff[i] = x[i] - y[i];
            }
            if (vec_pnorm(sum, p) >= t_dual * (1 - 1e-12))
                best_sep = std::max(best_sep, vec_pnorm(diff, p));
            auto w = duality_vector(diff, p);
            double step = 0.1 / (1.0 + 0.05 * it);
            for (std::size_t i = 0; i < x.size(); ++i) {
                x[i] += step * w[i];
                y[i] -= step * w[i];
            }
            // clip back into the ball and restore the sum constraint by
            // pulling toward the common midpoint direction
            normalize(x);
            normalize(y);
            std::vector<double> s2(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) s2[i] = x[i] + y[i];
            double ns = vec_pnorm(s2, p);
            if (ns < t_dual && ns > 1e-12) {
                for (std::size_t i = 0; i < x.size(); ++i) {
                    double mid = s2[i] / ns * (t_dual * 0.5001);
                    x[i] = 0.5 * x[i] + mid;
                    y[i] = 0.5 * y[i] + mid;
                }
                normalize(x);
                normalize(y);
            }
        }
    }
    rep.omega_estimate = std::min(best_sep, 2.0);
    rep.method = "sampled";
    return rep;
}

ModulePtr submodule(const ModulePtr& M, const RatMatrix& basis) {
    if (!M->p.is_two()) throw std::domain_error("restricted modules require p = 2 (Gram norm)");
    if (rat_rank(basis) != basis.cols) throw std::invalid_argument("basis columns are dependent");
    RatMatrix Bt = basis.transpose();
    RatMatrix left = rat_inverse(Bt * basis) * Bt;
    std::vector<RatMatrix> mats(M->group->n);
    for (int g = 0; g < M->group->n; ++g) {
        RatMatrix img = M->mat(g) * basis;
        RatMatrix Ag = left * img;
        if (!(basis * Ag == img)) throw std::invalid_argument("subspace is not invariant");
        mats[g] = std::move(Ag);
    }
    RatMatrix gram = Bt * M->gram * basis;
    return build_module_from_matrices(M->group, std::move(mats), M->p, std::move(gram));
}

RestrictedModule restrict_to_subgroup(const ModulePtr& M, const Subgroup& F) {
    RestrictedModule out;
    out.sub = subgroup_as_group(F);
    std::vector<RatMatrix> mats(out.sub.group->n);
    for (int i = 0; i < out.sub.group->n; ++i) mats[i] = M->mat(out.sub.to_parent[i]);
    out.module = build_module_from_matrices(out.sub.group, std::move(mats), M->p,
                                            M->gram_identity ? RatMatrix() : M->gram);
    return out;
}

}  // namespace cochainlab
