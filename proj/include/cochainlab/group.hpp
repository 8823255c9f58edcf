#pragma once

#include <memory>
#include <string>
#include <vector>

namespace cochainlab {

/// Finite group on dense element indices 0..N-1 with a full multiplication
/// table. Immutable after construction; associativity, identity and inverses
/// are verified by the factories.
struct FiniteGroup {
    int n = 0;
    std::vector<int> table;  // row-major n*n
    int identity = 0;
    std::vector<int> inv;

    int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * n + b]; }
    int invert(int a) const { return inv[a]; }
    int conj(int f, int g) const { return mul(mul(f, g), inv[f]); }  // f g f^-1
    int power(int g, long k) const;
    int order_of(int g) const;
    bool is_abelian() const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline constexpr int kDefaultGroupSizeCap = 64;

/// Validate and wrap a multiplication table. Throws std::invalid_argument on
/// a malformed, non-associative or identity-free table.
GroupPtr build_group_from_table(const std::vector<std::vector<int>>& table,
                                int size_cap = kDefaultGroupSizeCap);

/// Result of closing a set of permutation generators: the abstract group, the
/// permutation realizing each element, and where each input generator landed.
struct PermutationClosure {
    GroupPtr group;
    std::vector<std::vector<int>> element_perms;
    std::vector<int> generator_indices;
};

/// Enumerate the subgroup of Sym(degree) generated by the given permutations
/// (as image sequences) and convert it to a table group.
PermutationClosure build_group_from_permutations(int degree,
                                                 const std::vector<std::vector<int>>& generators,
                                                 int size_cap = kDefaultGroupSizeCap);

struct Subgroup {
    GroupPtr group;
    std::vector<int> elements;    // sorted
    std::vector<char> member;     // size N membership mask

    bool contains(int g) const { return member[g] != 0; }
    int order() const { return static_cast<int>(elements.size()); }
};

Subgroup subgroup_closure(const GroupPtr& G, const std::vector<int>& gens);
Subgroup whole_group(const GroupPtr& G);
Subgroup trivial_subgroup(const GroupPtr& G);

/// A small generating set of F (greedy; deterministic).
std::vector<int> generating_set(const Subgroup& F);

/// Partition of all of G into F-conjugation orbits.
struct ConjugacyData {
    Subgroup acting;
    std::vector<std::vector<int>> classes;  // each sorted; ordered by minimal element
    std::vector<int> class_of;              // total on G
};

ConjugacyData f_conjugacy_classes(const GroupPtr& G, const Subgroup& F);

/// FC_G(F) together with the centralizer indices [F : C_F(g)]. For finite G
/// the subgroup is all of G; this is asserted by direct closure checks, and
/// each index is verified against the orbit size |g^F|.
struct FcData {
    Subgroup fc_subgroup;
    std::vector<long> centralizer_index;  // indexed by g
};

FcData fc_data(const GroupPtr& G, const Subgroup& F);

/// Word length of g over the symmetrized generating set sigma (BFS distance
/// in the Cayley graph). Throws std::domain_error when g is outside <sigma>.
int word_length(const FiniteGroup& G, std::vector<int> sigma, int g);

/// The subgroup re-indexed as a standalone group, with index maps.
struct SubgroupGroup {
    GroupPtr group;                 // order |F| group
    std::vector<int> to_parent;     // sub index -> parent index
    std::vector<int> from_parent;   // parent index -> sub index or -1
};

SubgroupGroup subgroup_as_group(const Subgroup& F);

/// Direct product F x G as a table group, with the coordinate embeddings.
struct ProductGroup {
    GroupPtr group;
    std::vector<int> left_embed;   // f -> (f, e)
    std::vector<int> right_embed;  // g -> (e, g)
};

ProductGroup direct_product(const GroupPtr& F, const GroupPtr& G);

}  // namespace cochainlab
