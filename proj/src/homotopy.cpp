#include "cochainlab/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cochainlab {

namespace {

void require_simplex(const AlgebraElement& xi) {
    if (!classify(xi).in_simplex) throw std::domain_error("xi is not in the group simplex");
}

void require_commutes(const AlgebraElement& xi, const std::vector<int>& parent_elems) {
    const GroupPtr& G = xi.group;
    for (int f : parent_elems) {
        AlgebraElement d = delta(G, f);
        if (!(convolve(d, xi) == convolve(xi, d)))
            throw std::domain_error("xi is not in the commutant of F");
    }
}

bool next_tuple(std::vector<int>& tuple, int N) {
    for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
        if (++tuple[i] < N) return true;
        tuple[i] = 0;
    }
    return false;
}

// (R^{n+1}φ)(f_1,…,f_n) over the target module, with sub->parent index map.
Cochain homotopy_R_core(const Cochain& phi, const AlgebraElement& xi, const ModulePtr& target,
                        const std::vector<int>& to_parent) {
    if (phi.degree < 1) throw std::invalid_argument("homotopy operator needs degree >= 1");
    const int n = phi.degree - 1;
    const int d = phi.module->dim;
    Cochain out = zero_cochain(target, n);
    std::vector<int> tup(n, 0);
    const int m = target->group->n;
    do {
        RatVec acc(d, Rat(0));
        std::vector<int> args(phi.degree);
        for (int slot = 1; slot <= n + 1; ++slot) {
            // f_1,…,f_{slot-1}, ξ, f_slot,…,f_n
            for (int j = 0; j < slot - 1; ++j) args[j] = to_parent[tup[j]];
            for (int j = slot; j <= n; ++j) args[j] = to_parent[tup[j - 1]];
            const Rat sign = (slot % 2 == 1) ? Rat(1) : Rat(-1);
            for (const auto& [g, w] : xi.coeffs) {
                args[slot - 1] = g;
                RatVec v = phi.at(args);
                const Rat c = sign * w;
                for (int i = 0; i < d; ++i) acc[i] += c * v[i];
            }
        }
        out.set(tup, acc);
    } while (next_tuple(tup, m));
    return out;
}

std::vector<int> identity_map(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

RatVec r_xi(const Cochain& phi, const AlgebraElement& xi) {
    if (phi.degree != 1) throw std::invalid_argument("R_xi acts on degree-1 cochains");
    require_simplex(xi);
    RatVec acc(phi.module->dim, Rat(0));
    for (const auto& [g, w] : xi.coeffs) {
        RatVec v = phi.at({g});
        for (int i = 0; i < phi.module->dim; ++i) acc[i] += w * v[i];
    }
    return acc;
}

RatMatrix r_xi_matrix(const BanachModule& M, const AlgebraElement& xi) {
    const int N = M.group->n;
    const int d = M.dim;
    RatMatrix R(d, N * d);
    for (const auto& [g, w] : xi.coeffs)
        for (int i = 0; i < d; ++i) R.at(i, g * d + i) = w;
    return R;
}

RatMatrix invert_one_minus_direct(const BanachModule& M, const AlgebraElement& xi) {
    RatMatrix A = RatMatrix::identity(M.dim) - apply_algebra(M, xi);
    return rat_inverse(A);  // throws std::domain_error when singular
}

NeumannResult invert_one_minus_neumann(const BanachModule& M, const AlgebraElement& xi, int k_max,
                                       double tol) {
    RatMatrix P = apply_algebra(M, xi);
    auto cert = spectral_radius_below_one(P, M.p, M.gram_identity ? nullptr : &M.gram);
    if (!cert) throw std::domain_error("no certified contraction bound for pi(xi)");
    const int m = *cert;
    RatMatrix Pm = RatMatrix::identity(M.dim);
    for (int i = 0; i < m; ++i) Pm = Pm * P;
    double c = operator_norm(Pm, M.p, M.gram_identity ? nullptr : &M.gram).upper;
    c = std::min(c, 1.0 - 1e-12);
    NeumannResult res;
    res.cert_power = m;
    res.sum = RatMatrix::identity(M.dim);
    RatMatrix powk = RatMatrix::identity(M.dim);
    int k = 0;
    auto tail_bound = [&](int kk) {
        // ‖Σ_{j>kk} P^j‖ ≤ m·c^{⌊(kk+1)/m⌋} / (1−c), grouping the tail in
        // blocks of m with ‖P^i‖ ≤ 1
        double e = std::floor(static_cast<double>(kk + 1) / m);
        return m * std::pow(c, e) / (1.0 - c);
    };
    while (k < k_max && tail_bound(k) >= tol) {
        powk = powk * P;
        res.sum = res.sum + powk;
        ++k;
    }
    res.terms = k;
    res.residual_bound = tail_bound(k);
    return res;
}

SplittingReport nowak_projection(const ModulePtr& M, const AlgebraElement& xi) {
    require_simplex(xi);
    SplittingReport rep;
    const int N = M->group->n;
    const int d = M->dim;
    RatMatrix inv = invert_one_minus_direct(*M, xi);
    RatMatrix R = r_xi_matrix(*M, xi);
    // ∂¹ as an (N·d) × d block column of I − π(g)
    RatMatrix d1(N * d, d);
    for (int g = 0; g < N; ++g) {
        RatMatrix blk = RatMatrix::identity(d) - M->mat(g);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) d1.at(g * d + i, j) = blk.at(i, j);
    }
    rep.projector = d1 * inv * R;
    rep.dim_C = N * d;
    rep.idempotent = rep.projector * rep.projector == rep.projector;
    rep.dim_B = rat_rank(d1);
    rep.dim_ker_R = N * d - rat_rank(R);
    rep.image_equals_B = same_column_space(rep.projector, d1);
    if (!rep.idempotent) throw std::logic_error("Nowak projection failed idempotency");
    if (!rep.image_equals_B) throw std::logic_error("Nowak projection image differs from B^1");
    if (rep.dim_C != rep.dim_B + rep.dim_ker_R)
        throw std::logic_error("C^1 does not split as B^1 + ker R_xi");
    return rep;
}

Cochain homotopy_R(const Cochain& phi, const AlgebraElement& xi, const RestrictedModule& F) {
    require_simplex(xi);
    require_commutes(xi, F.sub.to_parent);
    return homotopy_R_core(phi, xi, F.module, F.sub.to_parent);
}

HomotopyIdentityReport verify_homotopy_identity(const ModulePtr& M, const AlgebraElement& xi,
                                                const Subgroup& F, const std::vector<int>& degrees,
                                                int samples, DetRng& rng) {
    require_simplex(xi);
    require_commutes(xi, F.elements);
    RestrictedModule FR = restrict_to_subgroup(M, F);
    RatMatrix pxi = apply_algebra(*M, xi);
    HomotopyIdentityReport rep;
    rep.degrees = degrees;
    for (int n : degrees) {
        for (int s = 0; s < samples; ++s) {
            Cochain phi = random_cochain(M, n, rng);
            Cochain res = restriction(phi, FR);
            res = res - postcompose(pxi, restriction(phi, FR));
            if (n >= 1) {
                Cochain Rn = homotopy_R_core(phi, xi, FR.module, FR.sub.to_parent);
                res = res - apply_coboundary(Rn);
            }
            res = res - homotopy_R_core(apply_coboundary(phi), xi, FR.module, FR.sub.to_parent);
            ++rep.samples;
            if (!res.is_zero()) {
                rep.exact_zero = false;
                if (rep.first_failure_flat < 0) {
                    for (std::size_t i = 0; i < res.values.size(); ++i)
                        if (res.values[i] != 0) {
                            rep.first_failure_flat = static_cast<long>(i);
                            rep.first_failure_degree = n;
                            break;
                        }
                }
            }
        }
    }
    return rep;
}

ContractingHomotopy contracting_homotopy(const ModulePtr& M, const AlgebraElement& xi) {
    require_simplex(xi);
    require_commutes(xi, whole_group(M->group).elements);
    ContractingHomotopy K;
    K.module = M;
    K.xi = xi;
    K.inverse = invert_one_minus_direct(*M, xi);
    return K;
}

Cochain ContractingHomotopy::apply(const Cochain& phi) const {
    if (phi.module.get() != module.get()) throw std::invalid_argument("cochain over a different module");
    if (phi.degree == 0) throw std::invalid_argument("K^0 maps into the zero object");
    Cochain r = homotopy_R_core(phi, xi, module, identity_map(module->group->n));
    return postcompose(inverse, r);
}

ContractingIdentityReport verify_contracting_identity(const ContractingHomotopy& K,
                                                      const std::vector<int>& degrees, int samples,
                                                      DetRng& rng) {
    ContractingIdentityReport rep;
    for (int n : degrees) {
        for (int s = 0; s < samples; ++s) {
            Cochain phi = random_cochain(K.module, n, rng);
            Cochain rhs = K.apply(apply_coboundary(phi));
            if (n >= 1) rhs = rhs + apply_coboundary(K.apply(phi));
            ++rep.samples;
            if (!(rhs == phi)) {
                rep.exact_zero = false;
                if (rep.first_failure_flat < 0) {
                    Cochain diff = rhs - phi;
                    for (std::size_t i = 0; i < diff.values.size(); ++i)
                        if (diff.values[i] != 0) {
                            rep.first_failure_flat = static_cast<long>(i);
                            rep.first_failure_degree = n;
                            break;
                        }
                }
            }
        }
    }
    return rep;
}

ContractingPair find_contracting_pair(const ModulePtr& M, const Subgroup& F) {
    auto inv = almost_invariant_check(*M, whole_group(M->group));
    if (inv.has_invariant_unit)
        throw std::domain_error("X^G != {0}: no contracting pair exists");
    ContractingPair pair;
    pair.xi = uniform_average(M->group, F.elements);
    ConjugacyData cd = f_conjugacy_classes(M->group, F);
    const int nclasses = static_cast<int>(cd.classes.size());
    const RatMatrix* gram = M->gram_identity ? nullptr : &M->gram;
    // grow a union of F-classes until A·B has full support and the product
    // contraction is certified
    std::vector<int> b_elems;
    std::vector<char> covered(M->group->n, 0);
    for (int c = 0; c < nclasses; ++c) {
        for (int g : cd.classes[c]) b_elems.push_back(g);
        std::fill(covered.begin(), covered.end(), 0);
        for (int f : F.elements)
            for (int g : b_elems) covered[M->group->mul(f, g)] = 1;
        bool full = std::all_of(covered.begin(), covered.end(), [](char x) { return x != 0; });
        if (!full) continue;
        AlgebraElement zeta = uniform_average(M->group, b_elems);
        AlgebraElement prod = convolve(pair.xi, zeta);
        RatMatrix P = apply_algebra(*M, prod);
        if (norm_strictly_below_one(P, M->p, gram)) {
            pair.zeta = zeta;
            pair.norm_bound = operator_norm(P, M->p, gram).upper;
            pair.certificate = "norm";
            if (!commutes_with_subgroup(pair.zeta, F)) throw std::logic_error("zeta not in F'");
            return pair;
        }
        if (auto m = spectral_radius_below_one(P, M->p, gram)) {
            pair.zeta = zeta;
            pair.norm_bound = operator_norm(P, M->p, gram).upper;
            pair.certificate = "spectral power " + std::to_string(*m);
            if (!commutes_with_subgroup(pair.zeta, F)) throw std::logic_error("zeta not in F'");
            return pair;
        }
    }
    // B = G always succeeds: the product is the averaging projector onto
    // X^G = {0}, i.e. the zero matrix
    AlgebraElement zeta = uniform_average(M->group, whole_group(M->group).elements);
    AlgebraElement prod = convolve(pair.xi, zeta);
    RatMatrix P = apply_algebra(*M, prod);
    if (!P.is_zero()) throw std::logic_error("full average is not the zero projector with X^G = 0");
    pair.zeta = zeta;
    pair.norm_bound = 0.0;
    pair.certificate = "zero projector";
    return pair;
}

Cochain restriction_nullifier(const Cochain& cocycle, const Subgroup& F, const AlgebraElement& xi,
                              const RestrictedModule& FR) {
    if (!is_cocycle(cocycle)) throw std::domain_error("input is not a cocycle");
    require_simplex(xi);
    require_commutes(xi, F.elements);
    RatMatrix inv = invert_one_minus_direct(*cocycle.module, xi);
    Cochain r = homotopy_R_core(cocycle, xi, FR.module, FR.sub.to_parent);
    Cochain psi = postcompose(inv, r);
    if (!(apply_coboundary(psi) == restriction(cocycle, FR)))
        throw std::logic_error("restriction nullifier identity failed");
    return psi;
}

namespace {

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0, theta = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0) theta = t;
    }
    for (auto& x : v) x = std::max(0.0, x - theta);
    return v;
}

struct CandidatePool {
    std::vector<AlgebraElement> elems;
    std::vector<RatMatrix> mats;
};

CandidatePool build_word_pool(const BanachModule& M, const std::vector<AlgebraElement>& gens,
                              int max_len, int max_candidates) {
    CandidatePool pool;
    std::set<std::map<int, Rat>> seen;
    std::vector<AlgebraElement> frontier;
    for (const auto& g : gens) {
        if (!classify(g).in_simplex) throw std::domain_error("semigroup generator outside Delta G");
        if (seen.insert(g.coeffs).second) {
            pool.elems.push_back(g);
            frontier.push_back(g);
        }
    }
    for (int len = 2; len <= max_len; ++len) {
        std::vector<AlgebraElement> next;
        for (const auto& w : frontier) {
            for (const auto& g : gens) {
                if (static_cast<int>(pool.elems.size()) >= max_candidates) break;
                AlgebraElement prod = convolve(g, w);
                if (seen.insert(prod.coeffs).second) {
                    pool.elems.push_back(prod);
                    next.push_back(prod);
                }
            }
        }
        frontier = std::move(next);
        if (frontier.empty() || static_cast<int>(pool.elems.size()) >= max_candidates) break;
    }
    pool.mats.reserve(pool.elems.size());
    for (const auto& e : pool.elems) pool.mats.push_back(apply_algebra(M, e));
    return pool;
}

// Minimize ‖Σ λ_w v_w‖_p over the simplex by projected gradient.
std::vector<double> optimize_simplex_weights(const std::vector<std::vector<double>>& vecs,
                                             const PNorm& p, std::vector<double> w0, int iters) {
    const std::size_t k = vecs.size();
    const std::size_t d = vecs[0].size();
    auto value = [&](const std::vector<double>& w) {
        std::vector<double> v(d, 0.0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < d; ++j) v[j] += w[i] * vecs[i][j];
        return std::pair{vec_pnorm(v, p), v};
    };
    std::vector<double> w = project_simplex(std::move(w0));
    auto [best, bv] = value(w);
    (void)bv;
    std::vector<double> wbest = w;
    for (int t = 1; t <= iters; ++t) {
        auto [val, v] = value(w);
        if (val < best) {
            best = val;
            wbest = w;
        }
        if (best < 1e-18) break;
        auto dual = duality_vector(v, p);
        std::vector<double> grad(k, 0.0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < d; ++j) grad[i] += dual[j] * vecs[i][j];
        double step = 0.5 / std::sqrt(static_cast<double>(t));
        for (std::size_t i = 0; i < k; ++i) w[i] -= step * grad[i];
        w = project_simplex(std::move(w));
    }
    return wbest;
}

// Exact minimization of ‖Σ λ_i v_i‖²_G over Σλ = 1 on a candidate face,
// dropping negative coordinates until the solution is feasible (p = 2 only).
// The float optimizer finds the face; the exact KKT solve then certifies the
// minimum, which is frequently exactly zero.
std::optional<std::vector<std::pair<int, Rat>>> exact_face_minimize(
    const std::vector<RatVec>& vecs, const RatMatrix& gram, bool gram_identity,
    std::vector<int> support) {
    auto inner = [&](const RatVec& a, const RatVec& b) {
        if (gram_identity) return dot(a, b);
        return dot(a, gram.apply(b));
    };
    while (!support.empty()) {
        const int k = static_cast<int>(support.size());
        RatMatrix K(k + 1, k + 1);
        RatVec rhs(k + 1, Rat(0));
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) K.at(i, j) = 2 * inner(vecs[support[i]], vecs[support[j]]);
            K.at(i, k) = 1;
            K.at(k, i) = 1;
        }
        rhs[k] = 1;
        auto sol = solve_linear(K, rhs);
        if (!sol) return std::nullopt;
        int worst = -1;
        Rat worst_val(0);
        for (int i = 0; i < k; ++i)
            if ((*sol)[i] < worst_val) {
                worst_val = (*sol)[i];
                worst = i;
            }
        if (worst < 0) {
            std::vector<std::pair<int, Rat>> out;
            for (int i = 0; i < k; ++i)
                if ((*sol)[i] != 0) out.emplace_back(support[i], (*sol)[i]);
            if (out.empty()) return std::nullopt;
            return out;
        }
        support.erase(support.begin() + worst);
    }
    return std::nullopt;
}

AlgebraElement rationalize_weights(const std::vector<AlgebraElement>& elems,
                                   const std::vector<double>& w) {
    std::vector<Rat> rw(w.size());
    Rat total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        double v = w[i] < 1e-12 ? 0.0 : w[i];
        rw[i] = rat_from_double(v);
        if (rw[i] < 0) rw[i] = 0;
        total += rw[i];
    }
    if (total == 0) {
        rw[0] = 1;
        total = 1;
    }
    AlgebraElement out(elems[0].group);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (rw[i] == 0) continue;
        out = add(out, scale(rw[i] / total, elems[i]));
    }
    return out;
}

}  // namespace

ShrinkResult shrinking_average(const ModulePtr& M, const std::vector<AlgebraElement>& generators,
                               const std::vector<RatVec>& E, double eps, const ShrinkBudget& budget,
                               std::uint64_t seed) {
    if (!M->p.strictly_convex())
        throw std::domain_error("shrinking_average requires 1 < p < inf (strict convexity)");
    if (generators.empty() || E.empty()) throw std::invalid_argument("empty generators or vector set");
    // fixed-space precondition: ∩ ker(I − π(s)) = {0}
    {
        RatMatrix stacked(static_cast<int>(generators.size()) * M->dim, M->dim);
        int row = 0;
        for (const auto& s : generators) {
            RatMatrix diff = RatMatrix::identity(M->dim) - apply_algebra(*M, s);
            for (int r = 0; r < M->dim; ++r, ++row)
                for (int c = 0; c < M->dim; ++c) stacked.at(row, c) = diff.at(r, c);
        }
        if (kernel_basis(stacked).cols != 0)
            throw std::domain_error("semigroup has a nontrivial common fixed space");
    }
    (void)seed;
    CandidatePool pool = build_word_pool(*M, generators, budget.max_word_len, budget.max_candidates);
    const bool exact2 = M->p.is_two();
    Rat eps2;
    if (exact2) {
        Rat e = rat_from_double(eps, 1ul << 30);
        eps2 = e * e;
    }
    auto norm_ok = [&](const RatVec& v) {
        if (exact2) return M->norm2_squared(v) < eps2;
        return M->norm(v) < eps;
    };

    ShrinkResult res;
    res.xi = delta(M->group, M->group->identity);
    const int max_rounds = 4;
    for (const auto& x0 : E) {
        RatVec y = apply_algebra(*M, res.xi).apply(x0);
        int rounds = 0;
        while (!norm_ok(y) && rounds < max_rounds) {
            // greedy word choice, then convex-weight refinement over the pool
            std::vector<std::vector<double>> images(pool.elems.size());
            int best_idx = 0;
            double best_val = -1;
            for (std::size_t i = 0; i < pool.elems.size(); ++i) {
                RatVec v = pool.mats[i].apply(y);
                std::vector<double> vd(v.size());
                for (std::size_t j = 0; j < v.size(); ++j) vd[j] = rat_to_double(v[j]);
                images[i] = std::move(vd);
                double nv = M->norm(images[i]);
                if (best_val < 0 || nv < best_val) {
                    best_val = nv;
                    best_idx = static_cast<int>(i);
                }
            }
            std::vector<double> w_hot(pool.elems.size(), 0.0);
            w_hot[best_idx] = 1.0;
            std::vector<double> w_uni(pool.elems.size(), 1.0 / static_cast<double>(pool.elems.size()));
            auto w1 = optimize_simplex_weights(images, M->p, w_hot, budget.opt_iters);
            auto w2 = optimize_simplex_weights(images, M->p, w_uni, budget.opt_iters);
            auto eval_w = [&](const std::vector<double>& w) {
                std::vector<double> v(images[0].size(), 0.0);
                for (std::size_t i = 0; i < w.size(); ++i)
                    for (std::size_t j = 0; j < v.size(); ++j) v[j] += w[i] * images[i][j];
                return M->norm(v);
            };
            const auto& w = eval_w(w1) <= eval_w(w2) ? w1 : w2;
            AlgebraElement T = rationalize_weights(pool.elems, w);
            if (exact2) {
                // exact face refinement over the float solution's support
                std::vector<int> order(pool.elems.size());
                for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
                std::stable_sort(order.begin(), order.end(),
                                 [&](int a, int b) { return w[a] > w[b]; });
                std::vector<int> support;
                for (int i : order)
                    if (w[i] > 1e-9 && static_cast<int>(support.size()) < 48) support.push_back(i);
                if (std::find(support.begin(), support.end(), best_idx) == support.end())
                    support.push_back(best_idx);
                std::sort(support.begin(), support.end());
                std::vector<RatVec> exact_imgs(pool.elems.size());
                for (int i : support) exact_imgs[i] = pool.mats[i].apply(y);
                auto face = exact_face_minimize(exact_imgs, M->gram, M->gram_identity, support);
                if (face) {
                    AlgebraElement Te(M->group);
                    RatVec ve(M->dim, Rat(0));
                    for (const auto& [idx, lam] : *face) {
                        Te = add(Te, scale(lam, pool.elems[idx]));
                        ve = ve + lam * exact_imgs[idx];
                    }
                    RatVec vf = apply_algebra(*M, T).apply(y);
                    if (classify(Te).in_simplex && M->norm2_squared(ve) <= M->norm2_squared(vf))
                        T = Te;
                }
            }
            res.xi = convolve(T, res.xi);
            y = apply_algebra(*M, T).apply(y);
            ++rounds;
            ++res.steps;
        }
    }
    // certified values for the composite
    RatMatrix Pxi = apply_algebra(*M, res.xi);
    res.best_bound = 0;
    res.success = true;
    for (const auto& x : E) {
        RatVec v = Pxi.apply(x);
        double nv;
        if (exact2) {
            Rat n2 = M->norm2_squared(v);
            nv = std::sqrt(rat_to_double(n2));
            if (!(n2 < eps2)) res.success = false;
        } else {
            nv = M->norm(v);
            if (!(nv < eps)) res.success = false;
        }
        res.achieved.push_back(nv);
        res.best_bound = std::max(res.best_bound, nv);
    }
    res.certified = exact2;
    return res;
}

WitnessResult almost_coboundary_witness(const Cochain& cocycle, const Subgroup& F,
                                        const std::vector<std::vector<int>>& E, double eps,
                                        const ShrinkBudget& budget, std::uint64_t seed) {
    const ModulePtr& M = cocycle.module;
    if (!M->p.strictly_convex())
        throw std::domain_error("almost_coboundary_witness requires 1 < p < inf");
    if (!is_cocycle(cocycle)) throw std::domain_error("input is not a cocycle");
    {
        auto inv = almost_invariant_check(*M, whole_group(M->group));
        if (inv.has_invariant_unit) throw std::domain_error("X^G != {0}: obstruction to the witness");
    }
    for (const auto& t : E) {
        if (static_cast<int>(t.size()) != cocycle.degree)
            throw std::invalid_argument("evaluation tuple arity mismatch");
        for (int g : t)
            if (!F.contains(g)) throw std::invalid_argument("evaluation tuple outside F^n");
    }
    // semigroup generated by the F-class averages; the X^F' lemma makes the
    // common fixed space equal X^G = {0}
    CommutantBasis cb = commutant_basis(M->group, F);
    std::vector<RatVec> vecs;
    for (const auto& t : E) vecs.push_back(cocycle.at(t));
    ShrinkResult sh = shrinking_average(M, cb.averages, vecs, eps, budget, seed);

    RestrictedModule FR = restrict_to_subgroup(M, F);
    RatMatrix pxi = apply_algebra(*M, sh.xi);
    Cochain psi = restriction(cocycle - postcompose(pxi, cocycle), FR);

    WitnessResult out{psi, sh.xi, 0, sh.success, sh.certified, false};
    for (const auto& t : E) {
        std::vector<int> sub(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) sub[i] = FR.sub.from_parent[t[i]];
        RatVec diff = cocycle.at(t) - psi.at(sub);
        out.sup_bound = std::max(out.sup_bound, M->norm(diff));
    }
    // exact membership ψ ∈ B^n(F,X); the homotopy proposition makes ψ a
    // coboundary over F whenever ∂φ = 0
    if (psi.degree >= 1) {
        CoboundaryMatrix down = coboundary_matrix(FR.module, psi.degree - 1);
        out.membership_verified = in_column_space(down.mat.to_dense(), psi.values);
    } else {
        out.membership_verified = true;
    }
    if (!out.membership_verified) throw std::logic_error("witness is not an exact coboundary over F");
    return out;
}

DecayResult generator_average_decay(const Cochain& phi, std::vector<int> sigma, double eps,
                                    const ShrinkBudget& budget, std::uint64_t seed) {
    (void)seed;
    const ModulePtr& M = phi.module;
    if (phi.degree != 1) throw std::invalid_argument("expects a degree-1 cocycle");
    if (!M->p.strictly_convex())
        throw std::domain_error("generator_average_decay requires 1 < p < inf");
    if (!is_cocycle(phi)) throw std::domain_error("input is not a cocycle");
    {
        auto inv = almost_invariant_check(*M, whole_group(M->group));
        if (inv.has_invariant_unit) throw std::domain_error("X^G != {0} is required");
    }
    // 1 ∈ Σ can be assumed: (φ−∂x)(e) = 0 contributes nothing to the sum
    std::set<int> s(sigma.begin(), sigma.end());
    s.insert(M->group->identity);
    sigma.assign(s.begin(), s.end());
    {
        Subgroup gen = subgroup_closure(M->group, sigma);
        if (gen.order() != M->group->n) throw std::invalid_argument("sigma does not generate G");
    }
    AlgebraElement sigma_avg = uniform_average(M->group, sigma);
    RatVec v = r_xi(phi, sigma_avg);  // φ̂(σ)
    const double target = eps / static_cast<double>(sigma.size());
    const bool exact2 = M->p.is_two();
    Rat target2;
    if (exact2) {
        Rat t = rat_from_double(target, 1ul << 40);
        target2 = t * t;
    }
    RatMatrix Ps = apply_algebra(*M, sigma_avg);

    DecayResult out;
    // power search: ξ = σ^k; π(σ) is a strict contraction once X^G = {0}
    const int max_pow = 512;
    RatVec w = v;
    AlgebraElement xi = sigma_avg;
    RatMatrix Pk = Ps;
    bool found = false;
    int k = 1;
    for (; k <= max_pow; ++k) {
        if (k > 1) {
            Pk = Pk * Ps;
            xi = convolve(xi, sigma_avg);
        }
        w = Pk.apply(v);
        bool ok = exact2 ? (M->norm2_squared(w) < target2) : (M->norm(w) < target);
        if (ok) {
            found = true;
            break;
        }
    }
    if (!found) {
        // convex search over the first powers
        const int K = 32;
        std::vector<AlgebraElement> elems;
        std::vector<RatVec> exact_imgs;
        std::vector<std::vector<double>> images;
        AlgebraElement cur = sigma_avg;
        RatMatrix Pc = Ps;
        for (int i = 1; i <= K; ++i) {
            if (i > 1) {
                Pc = Pc * Ps;
                cur = convolve(cur, sigma_avg);
            }
            elems.push_back(cur);
            RatVec img = Pc.apply(v);
            std::vector<double> id(img.size());
            for (std::size_t j = 0; j < img.size(); ++j) id[j] = rat_to_double(img[j]);
            images.push_back(std::move(id));
            exact_imgs.push_back(std::move(img));
        }
        std::vector<double> w0(elems.size(), 1.0 / static_cast<double>(elems.size()));
        auto wts = optimize_simplex_weights(images, M->p, w0, budget.opt_iters);
        xi = rationalize_weights(elems, wts);
        if (exact2) {
            std::vector<int> support;
            for (std::size_t i = 0; i < wts.size(); ++i)
                if (wts[i] > 1e-9) support.push_back(static_cast<int>(i));
            if (support.empty()) support.push_back(0);
            auto face = exact_face_minimize(exact_imgs, M->gram, M->gram_identity, support);
            if (face) {
                AlgebraElement xe(M->group);
                RatVec ve(M->dim, Rat(0));
                for (const auto& [idx, lam] : *face) {
                    xe = add(xe, scale(lam, elems[idx]));
                    ve = ve + lam * exact_imgs[idx];
                }
                if (classify(xe).in_simplex &&
                    M->norm2_squared(ve) <= M->norm2_squared(apply_algebra(*M, xi).apply(v)))
                    xi = xe;
            }
        }
        k = K;
    }
    out.power_used = k;
    out.xi = xi;
    out.x = r_xi(phi, xi);  // x = φ̂(ξ)
    // certified bound on ‖Σ_{g∈Σ}(φ − ∂x)(g)‖, computed directly
    RatVec total(M->dim, Rat(0));
    for (int g : sigma) {
        RatVec term = phi.at({g}) - (out.x - M->mat(g).apply(out.x));
        total = total + term;
    }
    if (exact2) {
        Rat n2 = M->norm2_squared(total);
        out.bound = std::sqrt(rat_to_double(n2));
        Rat e = rat_from_double(eps, 1ul << 40);
        out.success = n2 < e * e;
        out.certified = true;
    } else {
        out.bound = M->norm(total);
        out.success = out.bound < eps;
        out.certified = false;
    }
    return out;
}

}  // namespace cochainlab
