#include <doctest.h>

#include "cochainlab/algebra.hpp"
#include "cochainlab/rng.hpp"
#include "samples.hpp"

using namespace cochainlab;

namespace {

AlgebraElement random_element(const GroupPtr& G, DetRng& rng) {
    AlgebraElement x(G);
    for (int g = 0; g < G->n; ++g)
        if (rng.below(2)) x.set(g, rng.small_rat());
    return x;
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("dirac elements multiply as group elements") {
    auto G = samples::s3();
    for (int g = 0; g < G->n; ++g)
        for (int f = 0; f < G->n; ++f)
            CHECK(convolve(delta(G, g), delta(G, f)) == delta(G, G->mul(g, f)));
}

TEST_CASE("idempotent (e+g)/2 on Z/2") {
    auto G = samples::z2();
    AlgebraElement x(G);
    x.set(0, rat_of(1, 2));
    x.set(1, rat_of(1, 2));
    CHECK(convolve(x, x) == x);
}

TEST_CASE("augmentation is an algebra homomorphism") {
    auto G = samples::s3();
    DetRng rng(5);
    for (int t = 0; t < 50; ++t) {
        AlgebraElement a = random_element(G, rng), b = random_element(G, rng);
        CHECK(convolve(a, b).augmentation() == a.augmentation() * b.augmentation());
    }
}

TEST_CASE("convolution is associative and distributes") {
    auto G = samples::d4();
    DetRng rng(9);
    for (int t = 0; t < 25; ++t) {
        AlgebraElement a = random_element(G, rng), b = random_element(G, rng),
                       c = random_element(G, rng);
        CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
        CHECK(convolve(a, add(b, c)) == add(convolve(a, b), convolve(a, c)));
    }
}

TEST_CASE("classification flags") {
    auto G = samples::z4();
    AlgebraElement x(G);
    x.set(0, Rat(3));
    x.set(1, Rat(-2));
    auto c = classify(x);
    CHECK(c.augmentation_value == 1);
    CHECK(c.in_affine_space);
    CHECK_FALSE(c.in_simplex);
    CHECK_FALSE(c.in_augmentation_ideal);

    AlgebraElement y = sub(delta(G, 0), delta(G, 1));
    CHECK(classify(y).in_augmentation_ideal);

    AlgebraElement z(G);
    for (int g = 0; g < 3; ++g) z.set(g, rat_of(1, 3));
    CHECK(classify(z).in_simplex);
}

TEST_CASE("simplex is closed under convolution and convex combinations") {
    auto G = samples::s3();
    DetRng rng(21);
    for (int t = 0; t < 30; ++t) {
        // random simplex elements
        auto rand_simplex = [&] {
            AlgebraElement x(G);
            Rat total = 0;
            for (int g = 0; g < G->n; ++g) {
                Rat w(rng.below(3));
                if (w != 0) x.set(g, w);
                total += w;
            }
            if (total == 0) return delta(G, 0);
            return scale(1 / total, x);
        };
        AlgebraElement a = rand_simplex(), b = rand_simplex();
        CHECK(classify(convolve(a, b)).in_simplex);
        Rat t1(rng.below(5), 4);
        t1.canonicalize();
        CHECK(classify(add(scale(t1, a), scale(1 - t1, b))).in_simplex);
    }
}

TEST_CASE("class averages: coefficients, simplex membership, conjugation invariance") {
    auto G = samples::s3();
    ConjugacyData cd = f_conjugacy_classes(G, whole_group(G));
    for (int c = 0; c < static_cast<int>(cd.classes.size()); ++c) {
        AlgebraElement avg = class_average(G, cd, c);
        CHECK(classify(avg).in_simplex);
        Rat expected(1, static_cast<unsigned long>(cd.classes[c].size()));
        expected.canonicalize();
        for (int g : cd.classes[c]) CHECK(avg.coeff(g) == expected);
        // f · Bbar · f^-1 = Bbar for every f
        for (int f = 0; f < G->n; ++f) {
            AlgebraElement lhs = convolve(convolve(delta(G, f), avg), delta(G, G->invert(f)));
            CHECK(lhs == avg);
        }
    }
    // singleton class is a dirac
    ConjugacyData ct = f_conjugacy_classes(G, trivial_subgroup(G));
    CHECK(class_average(G, ct, ct.class_of[2]) == delta(G, 2));
    CHECK_THROWS_AS(class_average(G, cd, 99), std::invalid_argument);
}

TEST_CASE("commutant basis sizes") {
    auto G = samples::s3();
    CommutantBasis cb = commutant_basis(G, whole_group(G));
    CHECK(cb.basis.size() == 3);
    for (const auto& b : cb.basis) CHECK(commutes_with_subgroup(b, whole_group(G)));

    CommutantBasis ce = commutant_basis(G, trivial_subgroup(G));
    CHECK(ce.basis.size() == static_cast<std::size_t>(G->n));

    auto A = samples::z6();
    CommutantBasis ca = commutant_basis(A, whole_group(A));
    CHECK(ca.basis.size() == static_cast<std::size_t>(A->n));
}

TEST_CASE("commutant bases have disjoint supports") {
    auto G = samples::d4();
    CommutantBasis cb = commutant_basis(G, whole_group(G));
    std::vector<int> seen(G->n, 0);
    for (const auto& b : cb.basis)
        for (const auto& [g, v] : b.coeffs) {
            CHECK(v == 1);
            CHECK(seen[g] == 0);
            seen[g] = 1;
        }
}

TEST_CASE("uniform averages") {
    auto G = samples::z3();
    CHECK(uniform_average(G, {0}) == delta(G, 0));
    AlgebraElement u = uniform_average(G, {0, 1, 2});
    CHECK(convolve(u, u) == u);
    CHECK_THROWS_AS(uniform_average(G, {}), std::invalid_argument);
    AlgebraElement s = uniform_average(G, {0, 1});
    CHECK(s.coeffs.size() == 2);
}

TEST_CASE("mismatched groups are rejected") {
    CHECK_THROWS_AS(convolve(delta(samples::z2(), 0), delta(samples::z3(), 0)),
                    std::invalid_argument);
}

}  // TEST_SUITE
