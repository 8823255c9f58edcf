#include <doctest.h>

#include <set>

#include "cochainlab/group.hpp"
#include "samples.hpp"

using namespace cochainlab;

TEST_SUITE("group") {

TEST_CASE("table group: Z/2") {
    auto g = build_group_from_table({{0, 1}, {1, 0}});
    CHECK(g->n == 2);
    CHECK(g->identity == 0);
    CHECK(g->invert(1) == 1);
}

TEST_CASE("table without a two-sided identity is rejected") {
    CHECK_THROWS_AS(build_group_from_table({{0, 1}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("non-associative table is rejected") {
    // a Latin square that is not a group (order 5 loop)
    std::vector<std::vector<int>> t = {{0, 1, 2, 3, 4},
                                       {1, 0, 3, 4, 2},
                                       {2, 4, 0, 1, 3},
                                       {3, 2, 4, 0, 1},
                                       {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(build_group_from_table(t), std::invalid_argument);
}

TEST_CASE("permutation closure of {(01),(012)} has order 6") {
    // closure-enumeration oracle: walk products of permutation tuples directly
    std::set<std::vector<int>> closure{{0, 1, 2}};
    bool grew = true;
    std::vector<std::vector<int>> gens = {{1, 0, 2}, {1, 2, 0}};
    while (grew) {
        grew = false;
        std::set<std::vector<int>> next = closure;
        for (const auto& a : closure)
            for (const auto& g : gens) {
                std::vector<int> p(3);
                for (int x = 0; x < 3; ++x) p[x] = a[g[x]];
                if (next.insert(p).second) grew = true;
            }
        closure = next;
    }
    CHECK(closure.size() == 6);
    CHECK(samples::s3()->n == 6);
    CHECK_FALSE(samples::s3()->is_abelian());
}

TEST_CASE("mismatched permutation degree is rejected") {
    CHECK_THROWS_AS(build_group_from_permutations(3, {{1, 0, 2}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("subgroup closure") {
    auto G = samples::s3();
    Subgroup a3 = subgroup_closure(G, {samples::s3_threecycle()});
    CHECK(a3.order() == 3);
    CHECK(subgroup_closure(G, {}).order() == 1);
    std::vector<int> all;
    for (int i = 0; i < G->n; ++i) all.push_back(i);
    CHECK(subgroup_closure(G, all).order() == 6);
}

TEST_CASE("F-conjugacy classes of S3") {
    auto G = samples::s3();
    // brute-force conjugation oracle
    auto orbit_of = [&](int g, const Subgroup& F) {
        std::set<int> o;
        for (int f : F.elements) o.insert(G->conj(f, g));
        return o;
    };
    SUBCASE("F = G gives sizes {1,2,3}") {
        ConjugacyData cd = f_conjugacy_classes(G, whole_group(G));
        std::multiset<std::size_t> sizes;
        for (const auto& c : cd.classes) sizes.insert(c.size());
        CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});
        for (const auto& c : cd.classes) {
            std::set<int> expect = orbit_of(c[0], whole_group(G));
            CHECK(std::set<int>(c.begin(), c.end()) == expect);
        }
    }
    SUBCASE("F = A3 splits the 3-cycles into singletons") {
        Subgroup a3 = subgroup_closure(G, {samples::s3_threecycle()});
        ConjugacyData cd = f_conjugacy_classes(G, a3);
        std::multiset<std::size_t> sizes;
        for (const auto& c : cd.classes) sizes.insert(c.size());
        CHECK(sizes == std::multiset<std::size_t>{1, 1, 1, 3});
    }
    SUBCASE("F = {e} gives singletons") {
        ConjugacyData cd = f_conjugacy_classes(G, trivial_subgroup(G));
        CHECK(cd.classes.size() == static_cast<std::size_t>(G->n));
    }
    SUBCASE("idempotent under recomputation") {
        ConjugacyData c1 = f_conjugacy_classes(G, whole_group(G));
        ConjugacyData c2 = f_conjugacy_classes(G, whole_group(G));
        CHECK(c1.classes == c2.classes);
        CHECK(c1.class_of == c2.class_of);
    }
}

TEST_CASE("fc_data: orbit-stabilizer and closure") {
    auto G = samples::s3();
    FcData fc = fc_data(G, whole_group(G));
    CHECK(fc.fc_subgroup.order() == G->n);
    ConjugacyData cd = f_conjugacy_classes(G, whole_group(G));
    for (int g = 0; g < G->n; ++g)
        CHECK(fc.centralizer_index[g] == static_cast<long>(cd.classes[cd.class_of[g]].size()));
    CHECK(fc.centralizer_index[samples::s3_transposition()] == 3);

    // abelian: all centralizer indices are 1
    FcData fz = fc_data(samples::z6(), whole_group(samples::z6()));
    for (long v : fz.centralizer_index) CHECK(v == 1);
}

TEST_CASE("word length by BFS") {
    auto G = samples::z5();
    CHECK(word_length(*G, {1, 4}, 2) == 2);
    CHECK(word_length(*G, {1, 4}, 0) == 0);
    // brute-force oracle on all of Z/5: sigma = {1} symmetrized
    for (int g = 1; g < 5; ++g) {
        int expect = std::min(g, 5 - g);
        CHECK(word_length(*G, {1}, g) == expect);
    }
    auto Z4 = samples::z4();
    CHECK_THROWS_AS(word_length(*Z4, {2}, 1), std::domain_error);
    // triangle inequality, exhaustive on S3 with one transposition+cycle
    auto S = samples::s3();
    std::vector<int> sigma = {samples::s3_transposition(), samples::s3_threecycle()};
    for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 6; ++h)
            CHECK(word_length(*S, sigma, S->mul(g, h)) <=
                  word_length(*S, sigma, g) + word_length(*S, sigma, h));
}

TEST_CASE("length of powers collapses for finite order") {
    // the appendix length-function hypothesis lim l(g^n)/n = 0 is automatic:
    // g^{order} = e has length 0
    auto G = samples::s3();
    std::vector<int> sigma = {samples::s3_transposition(), samples::s3_threecycle()};
    for (int g = 0; g < G->n; ++g) CHECK(word_length(*G, sigma, G->power(g, G->order_of(g))) == 0);
}

TEST_CASE("subgroup as standalone group") {
    auto G = samples::d4();
    Subgroup r = subgroup_closure(G, {samples::d4_rotation()});
    SubgroupGroup sg = subgroup_as_group(r);
    CHECK(sg.group->n == 4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            CHECK(sg.to_parent[sg.group->mul(a, b)] == G->mul(sg.to_parent[a], sg.to_parent[b]));
}

TEST_CASE("direct product") {
    ProductGroup pg = direct_product(samples::z2(), samples::z3());
    CHECK(pg.group->n == 6);
    CHECK(pg.group->is_abelian());
    CHECK(pg.group->order_of(pg.group->mul(pg.left_embed[1], pg.right_embed[1])) == 6);
}

}  // TEST_SUITE
