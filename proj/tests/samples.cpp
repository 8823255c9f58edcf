#include "samples.hpp"

#include <map>

namespace samples {

namespace {

GroupPtr cyclic(int m) {
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t[a][b] = (a + b) % m;
    return build_group_from_table(t);
}

RatMatrix mat(const std::vector<std::vector<long>>& rows) {
    RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = Rat(rows[r][c]);
    return m;
}

int perm_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

const PermutationClosure& s3_closure() {
    static PermutationClosure c =
        build_group_from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
    return c;
}

const PermutationClosure& d4_closure() {
    static PermutationClosure c =
        build_group_from_permutations(4, {{1, 2, 3, 0}, {3, 2, 1, 0}});
    return c;
}

const PermutationClosure& a4_closure() {
    static PermutationClosure c =
        build_group_from_permutations(4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
    return c;
}

}  // namespace

GroupPtr z2() { static GroupPtr g = cyclic(2); return g; }
GroupPtr z3() { static GroupPtr g = cyclic(3); return g; }
GroupPtr z4() { static GroupPtr g = cyclic(4); return g; }
GroupPtr z5() { static GroupPtr g = cyclic(5); return g; }
GroupPtr z6() { static GroupPtr g = cyclic(6); return g; }

GroupPtr v4() {
    // elements e, a, b, ab with coordinates in (Z/2)^2
    static GroupPtr g = [] {
        std::vector<std::vector<int>> t(4, std::vector<int>(4));
        for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y) t[x][y] = (x ^ y);
        return build_group_from_table(t);
    }();
    return g;
}

GroupPtr s3() { return s3_closure().group; }
GroupPtr d4() { return d4_closure().group; }
GroupPtr a4() { return a4_closure().group; }

const std::vector<std::vector<int>>& s3_perms() { return s3_closure().element_perms; }
int s3_transposition() { return s3_closure().generator_indices[0]; }
int s3_threecycle() { return s3_closure().generator_indices[1]; }
int d4_rotation() { return d4_closure().generator_indices[0]; }
int d4_reflection() { return d4_closure().generator_indices[1]; }
int a4_threecycle() { return a4_closure().generator_indices[0]; }
int a4_double_transposition() { return a4_closure().generator_indices[1]; }

ModulePtr z2_sign(const PNorm& p) {
    return build_matrix_module(z2(), {{1, mat({{-1}})}}, p);
}

ModulePtr z3_xg() {
    static ModulePtr m = [] {
        ModulePtr reg = build_regular_module(z3(), PNorm::two());
        Decomposition d = invariants_and_decomposition(*reg, whole_group(z3()));
        return submodule(reg, d.complement_basis);
    }();
    return m;
}

ModulePtr z4_rot(const PNorm& p) {
    return build_matrix_module(z4(), {{1, mat({{0, -1}, {1, 0}})}}, p);
}

ModulePtr v4_signs(const PNorm& p) {
    return build_matrix_module(
        v4(), {{1, mat({{-1, 0}, {0, 1}})}, {2, mat({{1, 0}, {0, -1}})}}, p);
}

ModulePtr s3_signperm(const PNorm& p) {
    static std::map<std::string, ModulePtr> cache;
    auto it = cache.find(p.str());
    if (it != cache.end()) return it->second;
    const auto& perms = s3_perms();
    std::vector<RatMatrix> mats;
    for (const auto& perm : perms) {
        RatMatrix A(3, 3);
        Rat s(perm_sign(perm));
        for (int j = 0; j < 3; ++j) A.at(perm[j], j) = s;
        mats.push_back(std::move(A));
    }
    ModulePtr m = build_module_from_matrices(s3(), std::move(mats), p);
    cache[p.str()] = m;
    return m;
}

ModulePtr z6_signed(const PNorm& p) {
    return build_matrix_module(z6(), {{1, mat({{0, 0, -1}, {1, 0, 0}, {0, 1, 0}})}}, p);
}

ModulePtr d4_rot2(const PNorm& p) {
    return build_matrix_module(
        d4(),
        {{d4_rotation(), mat({{0, -1}, {1, 0}})}, {d4_reflection(), mat({{1, 0}, {0, -1}})}}, p);
}

ModulePtr a4_tetra(const PNorm& p) {
    return build_matrix_module(
        a4(),
        {{a4_threecycle(), mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})},
         {a4_double_transposition(), mat({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}})}},
        p);
}

std::vector<NamedModule> rotation_modules() {
    return {
        {"z2_sign", z2_sign()},     {"z3_xg", z3_xg()},       {"z4_rot", z4_rot()},
        {"v4_signs", v4_signs()},   {"s3_signperm", s3_signperm()},
        {"z6_signed", z6_signed()}, {"d4_rot2", d4_rot2()},   {"a4_tetra", a4_tetra()},
    };
}

std::vector<NamedModule> regular_modules() {
    return {
        {"z2_regular", build_regular_module(z2(), PNorm::two())},
        {"z3_regular", build_regular_module(z3(), PNorm::two())},
        {"z4_regular", build_regular_module(z4(), PNorm::two())},
        {"v4_regular", build_regular_module(v4(), PNorm::two())},
        {"s3_regular", build_regular_module(s3(), PNorm::two())},
        {"z6_regular", build_regular_module(z6(), PNorm::two())},
        {"d4_regular", build_regular_module(d4(), PNorm::two())},
        {"a4_regular", build_regular_module(a4(), PNorm::two())},
    };
}

std::vector<NamedModule> product_modules_no_invariants() {
    std::vector<NamedModule> out;
    {
        // Z/2 x Z/2, both factors acting by -1 on the line
        ProductGroup pg = direct_product(z2(), z2());
        out.push_back({"z2xz2_minus",
                       build_matrix_module(pg.group,
                                           {{pg.left_embed[1], mat({{-1}})},
                                            {pg.right_embed[1], mat({{-1}})}},
                                           PNorm::two())});
    }
    {
        // Z/2 x Z/4: -I and the quarter rotation
        ProductGroup pg = direct_product(z2(), z4());
        out.push_back({"z2xz4_rot",
                       build_matrix_module(pg.group,
                                           {{pg.left_embed[1], mat({{-1, 0}, {0, -1}})},
                                            {pg.right_embed[1], mat({{0, -1}, {1, 0}})}},
                                           PNorm::two())});
    }
    {
        // Z/3 x Z/3 on the invariant complement of a shared shift action
        ProductGroup pg = direct_product(z3(), z3());
        std::vector<std::vector<int>> action(pg.group->n);
        for (int f = 0; f < 3; ++f)
            for (int g = 0; g < 3; ++g) {
                int shift = (f + g) % 3;
                std::vector<int> img(3);
                for (int j = 0; j < 3; ++j) img[j] = (j + shift) % 3;
                action[pg.group->mul(pg.left_embed[f], pg.right_embed[g])] = img;
            }
        ModulePtr perm = build_permutation_module(pg.group, action, PNorm::two());
        Decomposition d = invariants_and_decomposition(*perm, whole_group(pg.group));
        out.push_back({"z3xz3_xg", submodule(perm, d.complement_basis)});
    }
    return out;
}

}  // namespace samples
