#include "cochainlab/affine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cochainlab {

RatVec AffineAction::apply(int g, const RatVec& x) const {
    RatVec v = module->mat(g).apply(x);
    RatVec t = cocycle.at({g});
    return v + t;
}

RatVec AffineAction::apply_affine(const AlgebraElement& xi, const RatVec& x) const {
    if (classify(xi).in_affine_space == false)
        throw std::domain_error("affine evaluation needs augmentation 1");
    RatVec v = apply_algebra(*module, xi).apply(x);
    RatVec t = multiaffine_eval(cocycle, {xi});
    return v + t;
}

AffineAction action_from_cocycle(const ModulePtr& M, Cochain phi) {
    if (phi.degree != 1) throw std::invalid_argument("cocycle must have degree 1");
    if (phi.module.get() != M.get()) throw std::invalid_argument("cocycle over a different module");
    if (!is_cocycle(phi)) throw std::domain_error("translation part is not a 1-cocycle");
    if (!vec_is_zero(phi.at({M->group->identity})))
        throw std::domain_error("cocycle must vanish at the identity");
    return AffineAction{M, std::move(phi)};
}

Cochain cocycle_from_action(const AffineAction& a) {
    // φ(g) = α(g)0
    Cochain phi = zero_cochain(a.module, 1);
    RatVec zero(a.module->dim, Rat(0));
    for (int g = 0; g < a.module->group->n; ++g) phi.set({g}, a.apply(g, zero));
    return phi;
}

FixedPointSet fixed_points(const AffineAction& a) {
    const ModulePtr& M = a.module;
    const int N = M->group->n;
    const int d = M->dim;
    RatMatrix sys(N * d, d);
    RatVec rhs(N * d);
    for (int g = 0; g < N; ++g) {
        RatMatrix blk = RatMatrix::identity(d) - M->mat(g);
        RatVec t = a.cocycle.at({g});
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) sys.at(g * d + r, c) = blk.at(r, c);
            rhs[g * d + r] = t[r];
        }
    }
    FixedPointSet out;
    auto sol = solve_linear(sys, rhs);
    out.nonempty = sol.has_value();
    out.directions = kernel_basis(sys);  // = X^G
    if (sol) {
        out.point = *sol;
        // barycenter cross-check: the average of the orbit of 0 must be fixed
        AlgebraElement uni = uniform_average(M->group, whole_group(M->group).elements);
        RatVec bary = multiaffine_eval(a.cocycle, {uni});
        for (int g = 0; g < N; ++g)
            if (!vec_is_zero(a.apply(g, bary) - bary))
                throw std::logic_error("orbit barycenter is not a fixed point");
    }
    return out;
}

namespace {

AlmostFixedReport minimize_displacement(
    const std::vector<RatMatrix>& mats, const std::vector<RatVec>& translations, const PNorm& p,
    const RatMatrix* gram, int dim, double eps, std::uint64_t seed, int iters, int restarts) {
    DetRng rng(seed);
    auto norm_of = [&](const std::vector<double>& v) {
        if (gram == nullptr) return vec_pnorm(v, p);
        double s = 0;
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) s += v[r] * rat_to_double(gram->at(r, c)) * v[c];
        return std::sqrt(std::max(0.0, s));
    };
    std::vector<std::vector<double>> matd;
    std::vector<std::vector<double>> trd;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        matd.push_back(mats[i].to_doubles());
        std::vector<double> t(dim);
        for (int j = 0; j < dim; ++j) t[j] = rat_to_double(translations[i][j]);
        trd.push_back(std::move(t));
    }
    auto objective = [&](const std::vector<double>& x, int* argmax) {
        double best = -1;
        for (std::size_t i = 0; i < matd.size(); ++i) {
            std::vector<double> v(dim, 0.0);
            for (int r = 0; r < dim; ++r) {
                double s = x[r];
                for (int c = 0; c < dim; ++c) s -= matd[i][static_cast<std::size_t>(r) * dim + c] * x[c];
                v[r] = s - trd[i][r];
            }
            double nv = norm_of(v);
            if (nv > best) {
                best = nv;
                if (argmax) *argmax = static_cast<int>(i);
            }
        }
        return best;
    };
    AlmostFixedReport rep;
    rep.value = -1;
    for (int rs = 0; rs < restarts; ++rs) {
        std::vector<double> x(dim, 0.0);
        if (rs > 0)
            for (auto& v : x) v = 4 * rng.unit() - 2;
        double scale = std::max(1.0, objective(x, nullptr));
        for (int t = 1; t <= iters; ++t) {
            int gi = 0;
            double val = objective(x, &gi);
            if (rep.value < 0 || val < rep.value) {
                rep.value = val;
                rep.x = x;
                if (val < eps) break;
            }
            // subgradient of ‖(I−π(g*))x − t‖ at the active g*
            std::vector<double> v(dim, 0.0);
            for (int r = 0; r < dim; ++r) {
                double s = x[r];
                for (int c = 0; c < dim; ++c) s -= matd[gi][static_cast<std::size_t>(r) * dim + c] * x[c];
                v[r] = s - trd[gi][r];
            }
            auto w = duality_vector(v, p);
            std::vector<double> grad(dim, 0.0);
            for (int r = 0; r < dim; ++r) {
                grad[r] += w[r];
                for (int c = 0; c < dim; ++c)
                    grad[c] -= matd[gi][static_cast<std::size_t>(r) * dim + c] * w[r];
            }
            double step = scale / std::sqrt(static_cast<double>(t));
            for (int r = 0; r < dim; ++r) x[r] -= step * grad[r];
        }
        if (rep.value >= 0 && rep.value < eps) break;
    }
    rep.reached_eps = rep.value < eps;
    return rep;
}

}  // namespace

AlmostFixedReport almost_fixed_point(const AffineAction& a, const std::vector<int>& E, double eps,
                                     std::uint64_t seed, int iters, int restarts) {
    // exact path first: a solvable system gives displacement 0
    FixedPointSet fp = fixed_points(a);
    if (fp.nonempty) {
        AlmostFixedReport rep;
        rep.x.resize(a.module->dim);
        for (int i = 0; i < a.module->dim; ++i) rep.x[i] = rat_to_double(fp.point[i]);
        rep.value = 0;
        rep.reached_eps = true;
        return rep;
    }
    std::vector<RatMatrix> mats;
    std::vector<RatVec> trs;
    for (int g : E) {
        mats.push_back(a.module->mat(g));
        trs.push_back(a.cocycle.at({g}));
    }
    return minimize_displacement(mats, trs, a.module->p,
                                 a.module->gram_identity ? nullptr : &a.module->gram, a.module->dim,
                                 eps, seed, iters, restarts);
}

bool delta_orbit_hull_check(const AffineAction& a, const RatVec& x, int trials, DetRng& rng) {
    const int N = a.module->group->n;
    const int d = a.module->dim;
    // orbit points as columns, with an affine row of ones for weight solving
    RatMatrix orbit(d + 1, N);
    for (int g = 0; g < N; ++g) {
        RatVec v = a.apply(g, x);
        for (int r = 0; r < d; ++r) orbit.at(r, g) = v[r];
        orbit.at(d, g) = 1;
    }
    for (int t = 0; t < trials; ++t) {
        // random simplex weights with small exact rationals
        std::vector<Rat> w(N, Rat(0));
        Rat total = 0;
        for (int g = 0; g < N; ++g) {
            w[g] = Rat(rng.below(4));
            total += w[g];
        }
        if (total == 0) {
            w[rng.below(N)] = 1;
            total = 1;
        }
        AlgebraElement xi(a.module->group);
        for (int g = 0; g < N; ++g)
            if (w[g] != 0) xi.set(g, w[g] / total);
        // direction 1: the weighted orbit combination equals α(ξ)x
        RatVec hull(d, Rat(0));
        for (int g = 0; g < N; ++g) {
            if (w[g] == 0) continue;
            RatVec v = a.apply(g, x);
            hull = hull + (w[g] / total) * v;
        }
        if (!vec_is_zero(hull - a.apply_affine(xi, x))) return false;
        // direction 2: the hull point admits exact affine weights
        RatVec rhs(d + 1);
        for (int r = 0; r < d; ++r) rhs[r] = hull[r];
        rhs[d] = 1;
        if (!solve_linear(orbit, rhs)) return false;
    }
    return true;
}

QuotientDisplacementReport quotient_displacement_check(const ModulePtr& M, int samples,
                                                       std::uint64_t seed) {
    QuotientDisplacementReport rep;
    rep.exact = M->p.is_two();
    QuotientModule Q = quotient_module(M, whole_group(M->group));
    DetRng rng(seed);
    const int N = M->group->n;
    auto check_vec = [&](const RatVec& v) {
        // v = x − π(g)x (or φ(g)); the quotient displacement is ‖v̄‖
        if (rep.exact) {
            Rat a2 = M->norm2_squared(v);
            Rat m2 = Q.quotient_norm2_squared(v);
            bool ok = 4 * m2 >= a2 && m2 <= a2;
            if (!ok) ++rep.failures;
            return;
        }
        double a = M->norm(v);
        double m = Q.quotient_norm(v);
        double viol = std::max(0.5 * a - m, m - a);
        rep.max_violation = std::max(rep.max_violation, viol);
        if (viol > 1e-9) ++rep.failures;
    };
    for (int s = 0; s < samples; ++s) {
        RatVec x = rng.rat_vector(M->dim);
        int g = rng.below(N);
        RatVec v = x - M->mat(g).apply(x);
        check_vec(v);
        ++rep.samples;
    }
    // cocycle form: finite groups have bounded φ(gⁿ), so the hypothesis
    // lim φ(gⁿ)/n = 0 is automatic; coboundaries span Z¹ here
    for (int s = 0; s < std::max(1, samples / 10); ++s) {
        RatVec x = rng.rat_vector(M->dim);
        Cochain phi = apply_coboundary(cochain_from_vector(M, x));
        int g = rng.below(N);
        check_vec(phi.at({g}));
        ++rep.samples;
    }
    rep.cocycle_form_checked = true;
    rep.pass = rep.failures == 0;
    return rep;
}

GuichardetReport guichardet_criterion(const ModulePtr& M) {
    GuichardetReport rep;
    auto coh = cohomology(M, 1, false);
    rep.dim_B1 = coh.dim_B;
    rep.dim_B1_closure = coh.dim_B;  // finite dimensions: B¹ is closed
    rep.b1_closed = true;
    QuotientModule Q = quotient_module(M, whole_group(M->group));
    rep.quotient_dim = Q.quotient_dim;
    // π̄(uniform) is exactly zero on the quotient, which certifies the
    // absence of almost invariant unit vectors there
    RatMatrix avg(Q.quotient_dim, Q.quotient_dim);
    for (int g = 0; g < M->group->n; ++g) avg = avg + Q.action[g];
    Rat w(1, M->group->n);
    w.canonicalize();
    avg = w * avg;
    rep.quotient_average_vanishes = avg.is_zero();
    rep.quotient_norm_bound = 0.0;
    rep.pass = rep.b1_closed && (rep.quotient_dim == 0 || rep.quotient_average_vanishes);
    return rep;
}

FpAffineAction fp_action_from_cocycle(const FpPresentation& P, const FpModule& M,
                                      std::vector<RatVec> gen_values) {
    if (gen_values.size() != P.generators.size())
        throw std::invalid_argument("one translation value per generator");
    for (const auto& v : gen_values)
        if (static_cast<int>(v.size()) != M.dim) throw std::invalid_argument("value dimension mismatch");
    // relator equations must vanish (Z¹ membership)
    RatVec flat(P.generators.size() * M.dim);
    for (std::size_t i = 0; i < gen_values.size(); ++i)
        for (int j = 0; j < M.dim; ++j) flat[i * M.dim + j] = gen_values[i][j];
    for (const auto& r : P.relators) {
        RatMatrix E = word_evaluation_matrix(P, M, r);
        if (!vec_is_zero(E.apply(flat))) throw std::domain_error("generator values violate a relator");
    }
    return FpAffineAction{P, M, std::move(gen_values)};
}

FixedPointSet fp_fixed_points(const FpAffineAction& a) {
    const int k = static_cast<int>(a.pres.generators.size());
    const int d = a.module.dim;
    RatMatrix sys(k * d, d);
    RatVec rhs(k * d);
    for (int i = 0; i < k; ++i) {
        RatMatrix blk = RatMatrix::identity(d) - a.module.gen_mats[i];
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) sys.at(i * d + r, c) = blk.at(r, c);
            rhs[i * d + r] = a.gen_values[i][r];
        }
    }
    FixedPointSet out;
    auto sol = solve_linear(sys, rhs);
    out.nonempty = sol.has_value();
    out.directions = kernel_basis(sys);
    if (sol) out.point = *sol;
    return out;
}

AlmostFixedReport fp_almost_fixed_point(const FpAffineAction& a, double eps, std::uint64_t seed,
                                        int iters, int restarts) {
    FixedPointSet fp = fp_fixed_points(a);
    if (fp.nonempty) {
        AlmostFixedReport rep;
        rep.x.resize(a.module.dim);
        for (int i = 0; i < a.module.dim; ++i) rep.x[i] = rat_to_double(fp.point[i]);
        rep.value = 0;
        rep.reached_eps = true;
        return rep;
    }
    return minimize_displacement(a.module.gen_mats, a.gen_values, a.module.p, nullptr, a.module.dim,
                                 eps, seed, iters, restarts);
}

QuotientInjectivityReport quotient_injectivity_check(const FpPresentation& P, const FpModule& M) {
    QuotientInjectivityReport rep;
    rep.abelianization_rank = abelianization_free_rank(P);
    {
        FpModule triv;
        triv.dim = 1;
        triv.p = M.p;
        triv.gen_mats.assign(P.generators.size(), RatMatrix::identity(1));
        triv.gen_inverses = triv.gen_mats;
        rep.trivial_h1 = fp_cocycle_space(P, triv).dim_H;
    }
    rep.applicable = rep.abelianization_rank == 0 && rep.trivial_h1 == 0;
    if (!rep.applicable) return rep;
    // X^G = ∩ ker(I − π(s_i)); the quotient map kills a cocycle iff every
    // generator value lies in X^G, so injectivity on Z¹ is an exact kernel
    // computation
    const int k = static_cast<int>(P.generators.size());
    const int d = M.dim;
    RatMatrix S(k * d, d);
    for (int i = 0; i < k; ++i) {
        RatMatrix blk = RatMatrix::identity(d) - M.gen_mats[i];
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) S.at(i * d + r, c) = blk.at(r, c);
    }
    FpCocycleSpace Z = fp_cocycle_space(P, M);
    if (Z.dim_Z == 0) {
        rep.injective = true;
        return rep;
    }
    // rows test membership in X^G componentwise: x ∈ X^G ⟺ Sx = 0
    RatMatrix test(k * S.rows, Z.dim_Z);
    for (int col = 0; col < Z.dim_Z; ++col) {
        RatVec z = Z.basis_Z.col(col);
        for (int i = 0; i < k; ++i) {
            RatVec vi(z.begin() + i * d, z.begin() + (i + 1) * d);
            RatVec img = S.apply(vi);
            for (int r = 0; r < S.rows; ++r) test.at(i * S.rows + r, col) = img[r];
        }
    }
    rep.injective = kernel_basis(test).cols == 0;
    return rep;
}

}  // namespace cochainlab
