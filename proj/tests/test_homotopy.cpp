#include <doctest.h>

#include <cmath>

#include "cochainlab/homotopy.hpp"
#include "samples.hpp"

using namespace cochainlab;

TEST_SUITE("homotopy") {

TEST_CASE("R_xi basics") {
    auto M = samples::z4_rot();
    auto G = M->group;
    DetRng rng(3);
    Cochain phi = random_cochain(M, 1, rng);
    CHECK(r_xi(phi, delta(G, 2)) == phi.at({2}));
    CHECK(vec_is_zero(r_xi(zero_cochain(M, 1), uniform_average(G, {0, 1}))));
    // R_xi(d¹x) = x - pi(xi)x on random x
    AlgebraElement xi = uniform_average(G, {0, 1, 3});
    for (int t = 0; t < 20; ++t) {
        Cochain x = random_cochain(M, 0, rng);
        RatVec lhs = r_xi(apply_coboundary(x), xi);
        RatVec rhs = x.values - apply_algebra(*M, xi).apply(x.values);
        CHECK(lhs == rhs);
    }
    // xi outside the simplex is rejected
    AlgebraElement bad = sub(delta(G, 0), delta(G, 1));
    CHECK_THROWS_AS(r_xi(phi, bad), std::domain_error);
}

TEST_CASE("r_xi_matrix matches r_xi") {
    auto M = samples::s3_signperm();
    auto G = M->group;
    AlgebraElement xi = uniform_average(G, whole_group(G).elements);
    RatMatrix R = r_xi_matrix(*M, xi);
    DetRng rng(5);
    for (int t = 0; t < 10; ++t) {
        Cochain phi = random_cochain(M, 1, rng);
        CHECK(R.apply(phi.values) == r_xi(phi, xi));
    }
}

TEST_CASE("invert_one_minus: direct") {
    auto G = samples::z4();
    auto M = samples::z4_rot();
    // xi = delta_e: I - pi(xi) = 0
    CHECK_THROWS_AS(invert_one_minus_direct(*M, delta(G, 0)), std::domain_error);
    // uniform over G: pi = 0, inverse = I
    CHECK(invert_one_minus_direct(*M, uniform_average(G, {0, 1, 2, 3})).is_identity());
}

TEST_CASE("invert_one_minus: neumann partial sums with certified residuals") {
    auto G = samples::z4();
    auto M = samples::z4_rot();
    AlgebraElement half(G);
    half.set(0, rat_of(1, 2));
    half.set(1, rat_of(1, 2));
    RatMatrix direct = invert_one_minus_direct(*M, half);
    auto res = invert_one_minus_neumann(*M, half, 200, 1e-8);
    CHECK(res.residual_bound < 1e-8);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            CHECK(rat_to_double(res.sum.at(r, c)) ==
                  doctest::Approx(rat_to_double(direct.at(r, c))).epsilon(1e-7));
    // residual bounds decrease monotonically once k >= 1
    auto r1 = invert_one_minus_neumann(*M, half, 5, 0.0);
    auto r2 = invert_one_minus_neumann(*M, half, 10, 0.0);
    CHECK(r2.residual_bound <= r1.residual_bound);
    // norm >= 1: no certificate
    auto T = trivial_module(G, 1, PNorm::two());
    CHECK_THROWS_AS(invert_one_minus_neumann(*T, half, 10, 1e-6), std::domain_error);
}

TEST_CASE("Nowak projection on the Z/4 rotation module") {
    auto G = samples::z4();
    auto M = samples::z4_rot();
    AlgebraElement xi = uniform_average(G, {0, 1, 2, 3});
    SplittingReport rep = nowak_projection(M, xi);
    CHECK(rep.idempotent);
    CHECK(rep.image_equals_B);
    CHECK(rep.dim_C == 8);
    CHECK(rep.dim_B == 2);
    CHECK(rep.dim_ker_R == 6);
    // P fixes d¹x
    DetRng rng(7);
    for (int t = 0; t < 20; ++t) {
        Cochain x = random_cochain(M, 0, rng);
        Cochain dx = apply_coboundary(x);
        CHECK(rep.projector.apply(dx.values) == dx.values);
    }
}

TEST_CASE("Nowak projection for a nontrivial xi on the S3 module") {
    auto M = samples::s3_signperm();
    auto G = M->group;
    ConjugacyData cd = f_conjugacy_classes(G, whole_group(G));
    // class of transpositions
    AlgebraElement xi = class_average(G, cd, cd.class_of[samples::s3_transposition()]);
    SplittingReport rep = nowak_projection(M, xi);
    CHECK(rep.idempotent);
    CHECK(rep.image_equals_B);
    CHECK(rep.dim_C == rep.dim_B + rep.dim_ker_R);
}

TEST_CASE("trivial group: P = 0 on the zero coboundary space") {
    auto G = build_group_from_table({{0}});
    auto M = trivial_module(G, 0, PNorm::two());
    // dim 0 module: everything degenerates but nothing throws
    CHECK(M->dim == 0);
}

TEST_CASE("homotopy_R formula at low degrees") {
    auto M = samples::s3_signperm();
    auto G = M->group;
    Subgroup a3 = subgroup_closure(G, {samples::s3_threecycle()});
    RestrictedModule FR = restrict_to_subgroup(M, a3);
    ConjugacyData cd = f_conjugacy_classes(G, a3);
    AlgebraElement xi = class_average(G, cd, cd.class_of[samples::s3_transposition()]);
    DetRng rng(11);
    SUBCASE("degree 1: (R¹φ)() = φ̂(ξ)") {
        Cochain phi = random_cochain(M, 1, rng);
        Cochain r = homotopy_R(phi, xi, FR);
        CHECK(r.degree == 0);
        CHECK(r.values == multiaffine_eval(phi, {xi}));
    }
    SUBCASE("degree 2: (R²φ)(f) = φ̂(ξ,f) − φ̂(f,ξ)") {
        Cochain phi = random_cochain(M, 2, rng);
        Cochain r = homotopy_R(phi, xi, FR);
        CHECK(r.degree == 1);
        for (int i = 0; i < FR.module->group->n; ++i) {
            int f = FR.sub.to_parent[i];
            RatVec expect = multiaffine_eval(phi, {xi, delta(G, f)}) -
                            multiaffine_eval(phi, {delta(G, f), xi});
            CHECK(r.at({i}) == expect);
        }
    }
    SUBCASE("zero cochain maps to zero") {
        CHECK(homotopy_R(zero_cochain(M, 2), xi, FR).is_zero());
    }
    SUBCASE("xi outside the commutant is rejected") {
        AlgebraElement bad = delta(G, samples::s3_transposition());
        CHECK_THROWS_AS(homotopy_R(random_cochain(M, 1, rng), bad, FR), std::domain_error);
    }
}

TEST_CASE("homotopy identity: degree 0 is x - pi(xi)x = R¹d¹x") {
    auto M = samples::z4_rot();
    auto G = M->group;
    Subgroup F = whole_group(G);
    RestrictedModule FR = restrict_to_subgroup(M, F);
    AlgebraElement xi = uniform_average(G, {0, 2});  // central in the abelian group
    DetRng rng(13);
    for (int t = 0; t < 20; ++t) {
        Cochain x = random_cochain(M, 0, rng);
        Cochain r1 = homotopy_R(apply_coboundary(x), xi, FR);
        RatVec expect = x.values - apply_algebra(*M, xi).apply(x.values);
        CHECK(r1.values == expect);
    }
}

TEST_CASE("homotopy identity holds exactly across configurations") {
    struct Config {
        const char* name;
        ModulePtr M;
        Subgroup F;
        AlgebraElement xi;
    };
    std::vector<Config> configs;
    {
        auto M = samples::s3_signperm();
        auto G = M->group;
        Subgroup a3 = subgroup_closure(G, {samples::s3_threecycle()});
        ConjugacyData cd = f_conjugacy_classes(G, a3);
        configs.push_back({"s3/a3/involution-class", M, a3,
                           class_average(G, cd, cd.class_of[samples::s3_transposition()])});
        ConjugacyData cg = f_conjugacy_classes(G, whole_group(G));
        configs.push_back({"s3/s3/rotation-class", M, whole_group(G),
                           class_average(G, cg, cg.class_of[samples::s3_threecycle()])});
    }
    {
        auto M = samples::d4_rot2();
        auto G = M->group;
        Subgroup rot = subgroup_closure(G, {samples::d4_rotation()});
        ConjugacyData cd = f_conjugacy_classes(G, rot);
        configs.push_back({"d4/rot/reflection-class", M, rot,
                           class_average(G, cd, cd.class_of[samples::d4_reflection()])});
    }
    {
        auto M = samples::z6_signed();
        auto G = M->group;
        Subgroup f = subgroup_closure(G, {2});
        configs.push_back({"z6/z3/singleton-class", M, f, delta(G, 3)});
    }
    {
        auto M = samples::a4_tetra();
        auto G = M->group;
        Subgroup v4 = subgroup_closure(
            G, {samples::a4_double_transposition(),
                G->conj(samples::a4_threecycle(), samples::a4_double_transposition())});
        REQUIRE(v4.order() == 4);
        ConjugacyData cd = f_conjugacy_classes(G, v4);
        configs.push_back({"a4/v4/3cycle-class", M, v4,
                           class_average(G, cd, cd.class_of[samples::a4_threecycle()])});
    }
    {
        auto M = build_regular_module(samples::s3(), PNorm::two());
        auto G = M->group;
        Subgroup a3 = subgroup_closure(G, {samples::s3_threecycle()});
        ConjugacyData cd = f_conjugacy_classes(G, a3);
        configs.push_back({"s3-regular/a3/involution-class", M, a3,
                           class_average(G, cd, cd.class_of[samples::s3_transposition()])});
    }
    for (auto& cfg : configs) {
        CAPTURE(cfg.name);
        DetRng rng(101);
        auto rep = verify_homotopy_identity(cfg.M, cfg.xi, cfg.F, {0, 1, 2}, 5, rng);
        CHECK(rep.exact_zero);
        CHECK(rep.samples == 15);
    }
}

TEST_CASE("xi = delta_e gives S = T and zero residuals") {
    auto M = samples::z4_rot();
    auto G = M->group;
    DetRng rng(17);
    auto rep = verify_homotopy_identity(M, delta(G, 0), whole_group(G), {0, 1}, 5, rng);
    CHECK(rep.exact_zero);
}

TEST_CASE("contracting homotopy: I = dK + Kd exactly up to degree 3") {
    auto M = samples::z3_xg();
    auto G = M->group;
    AlgebraElement xi = uniform_average(G, {0, 1, 2});
    ContractingHomotopy K = contracting_homotopy(M, xi);
    DetRng rng(19);
    CHECK(verify_contracting_identity(K, {0, 1, 2, 3}, 5, rng).exact_zero);
    // rank cross-check: dim H^n = 0 for n <= 3
    for (int n = 0; n <= 3; ++n) CHECK(cohomology(M, n, false).dim_H == 0);
}

TEST_CASE("contracting homotopy fails on the trivial module") {
    auto G = samples::z3();
    auto T = trivial_module(G, 1, PNorm::two());
    CHECK_THROWS_AS(contracting_homotopy(T, uniform_average(G, {0, 1, 2})), std::domain_error);
}

TEST_CASE("contracting homotopy with a non-uniform central xi") {
    auto M = samples::z4_rot();
    auto G = M->group;
    // xi = (e + g + g²)/3: I - pi(xi) = I - (I + R + R²)/3; R = rot90
    AlgebraElement xi = uniform_average(G, {0, 1, 2});
    ContractingHomotopy K = contracting_homotopy(M, xi);
    DetRng rng(23);
    CHECK(verify_contracting_identity(K, {0, 1, 2, 3}, 3, rng).exact_zero);
}

TEST_CASE("find_contracting_pair") {
    SUBCASE("F = G collapses to the uniform average with bound 0") {
        auto M = samples::z4_rot();
        auto pair = find_contracting_pair(M, whole_group(M->group));
        CHECK(pair.norm_bound < 1.0);
        CHECK(classify(pair.xi).in_simplex);
        CHECK(classify(pair.zeta).in_simplex);
        CHECK(commutes_with_subgroup(pair.zeta, whole_group(M->group)));
    }
    SUBCASE("S3 with the order-3 subgroup") {
        auto M = samples::s3_signperm();
        Subgroup a3 = subgroup_closure(M->group, {samples::s3_threecycle()});
        auto pair = find_contracting_pair(M, a3);
        CHECK(pair.norm_bound < 1.0);
        CHECK(commutes_with_subgroup(pair.zeta, a3));
        // the product certificate must make I - pi(xi*zeta) invertible
        AlgebraElement prod = convolve(pair.xi, pair.zeta);
        RatMatrix P = apply_algebra(*M, prod);
        CHECK(rat_rank(RatMatrix::identity(M->dim) - P) == M->dim);
    }
    SUBCASE("trivial rep errors") {
        auto T = trivial_module(samples::z3(), 1, PNorm::two());
        CHECK_THROWS_AS(find_contracting_pair(T, whole_group(samples::z3())), std::domain_error);
    }
}

TEST_CASE("restriction_nullifier: d psi = phi|_F exactly") {
    SUBCASE("n = 1 with F = G matches the averaging primitive") {
        auto M = samples::z4_rot();
        auto G = M->group;
        RestrictedModule FR = restrict_to_subgroup(M, whole_group(G));
        AlgebraElement xi = uniform_average(G, {0, 1, 2, 3});
        DetRng rng(29);
        for (int t = 0; t < 100; ++t) {
            Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
            Cochain psi = restriction_nullifier(phi, whole_group(G), xi, FR);
            CHECK(apply_coboundary(psi) == restriction(phi, FR));
            // compare against an exact linear solve of d¹x = φ
            CoboundaryMatrix d1 = coboundary_matrix(M, 0);
            auto sol = solve_linear(d1.mat.to_dense(), phi.values);
            REQUIRE(sol.has_value());
            // both are primitives; they differ by an element of X^G = {0},
            // hence agree exactly here
            CHECK(psi.values == *sol);
        }
    }
    SUBCASE("n = 2 on the Z/3 invariant-complement module") {
        auto M = samples::z3_xg();
        auto G = M->group;
        Subgroup F = whole_group(G);
        RestrictedModule FR = restrict_to_subgroup(M, F);
        AlgebraElement xi = uniform_average(G, {0, 1, 2});
        DetRng rng(31);
        for (int t = 0; t < 25; ++t) {
            Cochain phi = apply_coboundary(random_cochain(M, 1, rng));
            REQUIRE(is_cocycle(phi));
            Cochain psi = restriction_nullifier(phi, F, xi, FR);
            CHECK(apply_coboundary(psi) == restriction(phi, FR));
        }
    }
    SUBCASE("subgroup restriction: S3 cocycles nullified over A3") {
        auto M = samples::s3_signperm();
        auto G = M->group;
        Subgroup a3 = subgroup_closure(G, {samples::s3_threecycle()});
        RestrictedModule FR = restrict_to_subgroup(M, a3);
        ConjugacyData cd = f_conjugacy_classes(G, a3);
        AlgebraElement xi = class_average(G, cd, cd.class_of[samples::s3_transposition()]);
        // I - pi(xi) must be invertible for this xi
        REQUIRE(rat_rank(RatMatrix::identity(M->dim) - apply_algebra(*M, xi)) == M->dim);
        DetRng rng(37);
        for (int t = 0; t < 100; ++t) {
            Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
            Cochain psi = restriction_nullifier(phi, a3, xi, FR);
            CHECK(apply_coboundary(psi) == restriction(phi, FR));
        }
    }
    SUBCASE("non-cocycles are rejected") {
        auto M = samples::z4_rot();
        auto G = M->group;
        RestrictedModule FR = restrict_to_subgroup(M, whole_group(G));
        DetRng rng(41);
        Cochain phi = random_cochain(M, 1, rng);
        REQUIRE_FALSE(is_cocycle(phi));
        CHECK_THROWS_AS(
            restriction_nullifier(phi, whole_group(G), uniform_average(G, {0, 1, 2, 3}), FR),
            std::domain_error);
    }
}

TEST_CASE("shrinking_average") {
    SUBCASE("single vector with the uniform projector: one step to exact zero") {
        auto M = samples::z4_rot();
        auto G = M->group;
        std::vector<AlgebraElement> gens = {uniform_average(G, {0, 1, 2, 3})};
        RatVec x{Rat(1), Rat(2)};
        auto res = shrinking_average(M, gens, {x}, 1e-6);
        CHECK(res.success);
        CHECK(res.certified);
        CHECK(res.best_bound == 0.0);
    }
    SUBCASE("geometric decay for S = {(e+g)/2} on the rotation module") {
        auto M = samples::z4_rot();
        auto G = M->group;
        AlgebraElement half(G);
        half.set(0, rat_of(1, 2));
        half.set(1, rat_of(1, 2));
        RatVec x{Rat(1), Rat(0)};
        auto res = shrinking_average(M, {half}, {x}, 1e-6);
        CHECK(res.success);
        CHECK(res.best_bound < 1e-6);
    }
    SUBCASE("three vectors: the sequential composite bounds all of them") {
        auto M = samples::s3_signperm();
        auto G = M->group;
        CommutantBasis cb = commutant_basis(G, whole_group(G));
        std::vector<RatVec> E = {{Rat(1), Rat(0), Rat(0)},
                                 {Rat(0), Rat(1), Rat(2)},
                                 {Rat(3), Rat(-1), Rat(1)}};
        auto res = shrinking_average(M, cb.averages, E, 1e-6);
        CHECK(res.success);
        for (double a : res.achieved) CHECK(a < 1e-6);
        CHECK(classify(res.xi).in_simplex);
        CHECK(commutes_with_subgroup(res.xi, whole_group(G)));
    }
    SUBCASE("nontrivial fixed space is rejected") {
        auto M = build_regular_module(samples::z3(), PNorm::two());
        auto G = M->group;
        std::vector<AlgebraElement> gens = {uniform_average(G, {0, 1, 2})};
        CHECK_THROWS_AS(shrinking_average(M, gens, {{Rat(1), Rat(0), Rat(0)}}, 1e-6),
                        std::domain_error);
    }
    SUBCASE("p = 1 is refused (strict convexity gate)") {
        auto M = samples::z4_rot(PNorm::one());
        auto G = M->group;
        std::vector<AlgebraElement> gens = {uniform_average(G, {0, 1, 2, 3})};
        CHECK_THROWS_AS(shrinking_average(M, gens, {{Rat(1), Rat(0)}}, 1e-6), std::domain_error);
    }
}

TEST_CASE("almost_coboundary_witness") {
    auto M = samples::s3_signperm();
    auto G = M->group;
    Subgroup a3 = subgroup_closure(G, {samples::s3_threecycle()});
    DetRng rng(43);
    SUBCASE("F = G: one averaging step gives an exact coboundary") {
        Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
        std::vector<std::vector<int>> E;
        for (int g = 0; g < G->n; ++g) E.push_back({g});
        auto w = almost_coboundary_witness(phi, whole_group(G), E, 1e-6);
        CHECK(w.success);
        CHECK(w.certified);
        CHECK(w.membership_verified);
        CHECK(w.sup_bound < 1e-6);
    }
    SUBCASE("subgroup F = A3") {
        Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
        std::vector<std::vector<int>> E;
        for (int f : a3.elements) E.push_back({f});
        auto w = almost_coboundary_witness(phi, a3, E, 1e-6);
        CHECK(w.success);
        CHECK(w.membership_verified);
    }
    SUBCASE("tuples outside F^n are rejected") {
        Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
        std::vector<std::vector<int>> E = {{samples::s3_transposition()}};
        CHECK_THROWS_AS(almost_coboundary_witness(phi, a3, E, 1e-6), std::invalid_argument);
    }
    SUBCASE("budget exhaustion reports the best bound without success") {
        // an impossible epsilon with a crippled budget cannot be certified
        Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
        std::vector<std::vector<int>> E;
        for (int f : a3.elements) E.push_back({f});
        ShrinkBudget tiny;
        tiny.max_word_len = 1;
        tiny.opt_iters = 1;
        tiny.max_candidates = 1;
        auto w = almost_coboundary_witness(phi, a3, E, 1e-30, tiny);
        // with vanishing phi-values zero is still reachable, so only check
        // the report structure: bound is finite and membership still exact
        CHECK(w.membership_verified);
        CHECK(w.sup_bound >= 0);
    }
}

TEST_CASE("generator_average_decay") {
    SUBCASE("sigma = G: the average is the zero projector, bound 0") {
        auto M = samples::z4_rot();
        DetRng rng(47);
        Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
        auto res = generator_average_decay(phi, {0, 1, 2, 3}, 1e-6);
        CHECK(res.success);
        CHECK(res.certified);
        CHECK(res.bound == 0.0);
        CHECK(res.power_used == 1);
    }
    SUBCASE("sigma = {e, g}: geometric decay in powers") {
        auto M = samples::z4_rot();
        DetRng rng(53);
        Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
        auto res = generator_average_decay(phi, {0, 1}, 1e-6);
        CHECK(res.success);
        CHECK(res.bound < 1e-6);
    }
    SUBCASE("coboundary input recovers a primitive-like x") {
        auto M = samples::s3_signperm();
        DetRng rng(59);
        Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
        std::vector<int> sigma = {samples::s3_transposition(), samples::s3_threecycle()};
        auto res = generator_average_decay(phi, sigma, 1e-6);
        CHECK(res.success);
        CHECK(res.bound < 1e-6);
    }
    SUBCASE("non-generating sigma is rejected") {
        auto M = samples::z4_rot();
        DetRng rng(61);
        Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
        CHECK_THROWS_AS(generator_average_decay(phi, {2}, 1e-6), std::invalid_argument);
    }
    SUBCASE("invariant vectors obstruct") {
        auto M = build_regular_module(samples::z2(), PNorm::two());
        DetRng rng(67);
        Cochain phi = apply_coboundary(random_cochain(M, 0, rng));
        CHECK_THROWS_AS(generator_average_decay(phi, {0, 1}, 1e-6), std::domain_error);
    }
}

TEST_CASE("corollary at finite scale: contracting homotopy from a full-support class union") {
    // X^G = {0} implies the uniform average over all conjugacy classes (the
    // whole group) yields an exact contracting homotopy
    for (const auto& [name, M] : samples::rotation_modules()) {
        CAPTURE(name);
        auto G = M->group;
        AlgebraElement xi = uniform_average(G, whole_group(G).elements);
        ContractingHomotopy K = contracting_homotopy(M, xi);
        DetRng rng(71);
        CHECK(verify_contracting_identity(K, {0, 1, 2}, 2, rng).exact_zero);
    }
}

}  // TEST_SUITE
