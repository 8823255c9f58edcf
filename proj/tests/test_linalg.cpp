#include <doctest.h>

#include "cochainlab/linalg.hpp"
#include "cochainlab/rng.hpp"
#include "oracles.hpp"

using namespace cochainlab;

namespace {

RatMatrix random_matrix(DetRng& rng, int rows, int cols) {
    RatMatrix m(rows, cols);
    for (auto& v : m.a) v = rng.small_rat();
    return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("rank agrees with the plain-gauss oracle on random matrices") {
    DetRng rng(7);
    for (int t = 0; t < 50; ++t) {
        int r = 1 + rng.below(6), c = 1 + rng.below(6);
        RatMatrix m = random_matrix(rng, r, c);
        CHECK(rat_rank(m) == oracles::plain_rank(m));
    }
}

TEST_CASE("kernel vectors are exact kernel vectors and count matches rank") {
    DetRng rng(11);
    for (int t = 0; t < 40; ++t) {
        int r = 1 + rng.below(5), c = 1 + rng.below(6);
        RatMatrix m = random_matrix(rng, r, c);
        RatMatrix k = kernel_basis(m);
        CHECK(k.cols == c - rat_rank(m));
        for (int j = 0; j < k.cols; ++j) CHECK(vec_is_zero(m.apply(k.col(j))));
        CHECK(rat_rank(k) == k.cols);
    }
}

TEST_CASE("solve_linear matches the oracle's consistency verdict and verifies") {
    DetRng rng(13);
    int solvable_seen = 0, unsolvable_seen = 0;
    for (int t = 0; t < 60; ++t) {
        int r = 1 + rng.below(5), c = 1 + rng.below(5);
        RatMatrix m = random_matrix(rng, r, c);
        RatVec b = rng.rat_vector(r);
        auto sol = solve_linear(m, b);
        CHECK(sol.has_value() == oracles::plain_solvable(m, b));
        if (sol) {
            ++solvable_seen;
            CHECK(vec_is_zero(m.apply(*sol) - b));
        } else {
            ++unsolvable_seen;
        }
    }
    CHECK(solvable_seen > 0);
    CHECK(unsolvable_seen > 0);
}

TEST_CASE("inverse is two-sided") {
    DetRng rng(17);
    int inverted = 0;
    for (int t = 0; t < 30 && inverted < 15; ++t) {
        int n = 1 + rng.below(5);
        RatMatrix m = random_matrix(rng, n, n);
        if (rat_rank(m) != n) continue;
        RatMatrix inv = rat_inverse(m);
        CHECK((m * inv).is_identity());
        CHECK((inv * m).is_identity());
        ++inverted;
    }
    CHECK(inverted > 0);
}

TEST_CASE("inverse of a singular matrix throws") {
    RatMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 2;
    m.at(1, 1) = 4;
    CHECK_THROWS_AS(rat_inverse(m), std::domain_error);
}

TEST_CASE("column space basis spans the columns") {
    DetRng rng(19);
    for (int t = 0; t < 30; ++t) {
        int r = 1 + rng.below(5), c = 1 + rng.below(6);
        RatMatrix m = random_matrix(rng, r, c);
        RatMatrix b = column_space_basis(m);
        CHECK(rat_rank(b) == b.cols);
        CHECK(columns_contained(m, b));
        CHECK(columns_contained(b, m));
    }
}

TEST_CASE("sparse rank equals dense rank, both orientations") {
    DetRng rng(23);
    for (int t = 0; t < 30; ++t) {
        int r = 1 + rng.below(8), c = 1 + rng.below(8);
        SparseRatMatrix s(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (rng.below(3) == 0) s.add(i, j, rng.small_rat_nonzero());
        s.finalize();
        RatMatrix d = s.to_dense();
        CHECK(sparse_rank(s) == rat_rank(d));
        CHECK(sparse_rank(s.transpose()) == rat_rank(d));
    }
}

TEST_CASE("sparse kernel basis is a kernel basis") {
    DetRng rng(29);
    for (int t = 0; t < 20; ++t) {
        int r = 1 + rng.below(8), c = 1 + rng.below(8);
        SparseRatMatrix s(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (rng.below(3) == 0) s.add(i, j, rng.small_rat_nonzero());
        s.finalize();
        RatMatrix k = sparse_kernel_basis(s);
        CHECK(k.cols == c - sparse_rank(s));
        for (int j = 0; j < k.cols; ++j) CHECK(vec_is_zero(s.apply(k.col(j))));
        CHECK(rat_rank(k) == k.cols);
    }
}

TEST_CASE("float rank agrees with exact rank on small integer matrices") {
    DetRng rng(31);
    for (int t = 0; t < 25; ++t) {
        int r = 1 + rng.below(6), c = 1 + rng.below(6);
        SparseRatMatrix s(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (rng.below(2) == 0) s.add(i, j, Rat(rng.below(7) - 3));
        s.finalize();
        CHECK(float_rank(s) == sparse_rank(s));
    }
}

TEST_CASE("exact PSD and PD tests") {
    RatMatrix I = RatMatrix::identity(3);
    CHECK(is_psd_exact(I));
    CHECK(is_pd_exact(I));
    RatMatrix Z(3, 3);
    CHECK(is_psd_exact(Z));
    CHECK_FALSE(is_pd_exact(Z));
    // A^T A is always PSD
    DetRng rng(37);
    for (int t = 0; t < 20; ++t) {
        RatMatrix A = random_matrix(rng, 3, 3);
        RatMatrix S = A.transpose() * A;
        CHECK(is_psd_exact(S));
        CHECK_FALSE(is_psd_exact(S - RatMatrix(Rat(1000) * RatMatrix::identity(3))));
    }
    RatMatrix neg = RatMatrix::identity(2);
    neg.at(1, 1) = -1;
    CHECK_FALSE(is_psd_exact(neg));
}

TEST_CASE("pencil lambda-max bounds bracket the true eigenvalue") {
    // diag(1, 4, 9): lambda_max = 9
    RatMatrix M(3, 3);
    M.at(0, 0) = 1;
    M.at(1, 1) = 4;
    M.at(2, 2) = 9;
    RatMatrix G = RatMatrix::identity(3);
    Rat up = pencil_lambda_max_upper(M, G, 1e-9);
    CHECK(up >= 9);
    CHECK(rat_to_double(up) <= 9.0 * (1 + 1e-8) + 1e-12);
    RatVec e2{Rat(0), Rat(0), Rat(1)};
    CHECK(pencil_rayleigh(M, G, e2) == 9);
}

TEST_CASE("rationalize doubles: continued fractions recover simple fractions") {
    CHECK(rat_from_double(0.5) == rat_of(1, 2));
    CHECK(rat_from_double(0.2) == rat_of(1, 5));
    CHECK(rat_from_double(-0.75) == rat_of(-3, 4));
    CHECK(rat_from_double(0.0) == 0);
    Rat x = rat_from_double(1.0 / 3.0);
    CHECK(x == rat_of(1, 3));
}

}  // TEST_SUITE
