#include "cochainlab/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cochainlab {

int FiniteGroup::power(int g, long k) const {
    int r = identity;
    long e = k;
    int base = g;
    if (e < 0) {
        base = inv[g];
        e = -e;
    }
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

int FiniteGroup::order_of(int g) const {
    int x = g, k = 1;
    while (x != identity) {
        x = mul(x, g);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

GroupPtr build_group_from_table(const std::vector<std::vector<int>>& table, int size_cap) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw std::invalid_argument("empty multiplication table");
    if (n > size_cap) throw std::invalid_argument("group order exceeds size cap");
    auto g = std::make_shared<FiniteGroup>();
    g->n = n;
    g->table.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n) throw std::invalid_argument("table is not square");
        for (int b = 0; b < n; ++b) {
            int v = table[a][b];
            if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
            g->table[static_cast<std::size_t>(a) * n + b] = v;
        }
    }
    // two-sided identity
    int e = -1;
    for (int c = 0; c < n; ++c) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = g->mul(c, a) == a && g->mul(a, c) == a;
        if (ok) {
            e = c;
            break;
        }
    }
    if (e < 0) throw std::invalid_argument("no two-sided identity");
    g->identity = e;
    // inverses
    g->inv.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (g->mul(a, b) == e && g->mul(b, a) == e) {
                g->inv[a] = b;
                break;
            }
        if (g->inv[a] < 0) throw std::invalid_argument("element without inverse");
    }
    // associativity
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
                    throw std::invalid_argument("multiplication table is not associative");
    return g;
}

PermutationClosure build_group_from_permutations(int degree,
                                                 const std::vector<std::vector<int>>& generators,
                                                 int size_cap) {
    if (degree <= 0) throw std::invalid_argument("permutation degree must be positive");
    for (const auto& p : generators) {
        if (static_cast<int>(p.size()) != degree)
            throw std::invalid_argument("permutation generator with mismatched degree");
        std::vector<char> seen(degree, 0);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v]) throw std::invalid_argument("not a permutation");
            seen[v] = 1;
        }
    }
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);

    auto compose = [degree](const std::vector<int>& a, const std::vector<int>& b) {
        // (a*b)(x) = a(b(x))
        std::vector<int> c(degree);
        for (int x = 0; x < degree; ++x) c[x] = a[b[x]];
        return c;
    };

    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    std::deque<int> work{0};
    while (!work.empty()) {
        int i = work.front();
        work.pop_front();
        for (const auto& gperm : generators) {
            auto prod = compose(elems[i], gperm);
            if (index.emplace(prod, static_cast<int>(elems.size())).second) {
                elems.push_back(prod);
                if (static_cast<int>(elems.size()) > size_cap)
                    throw std::invalid_argument("group order exceeds size cap");
                work.push_back(static_cast<int>(elems.size()) - 1);
            }
        }
    }
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));

    PermutationClosure out;
    out.group = build_group_from_table(table, size_cap);
    out.element_perms = std::move(elems);
    for (const auto& gperm : generators) out.generator_indices.push_back(index.at(gperm));
    return out;
}

namespace {

Subgroup make_subgroup(const GroupPtr& G, std::set<int> elems) {
    Subgroup s;
    s.group = G;
    s.elements.assign(elems.begin(), elems.end());
    s.member.assign(G->n, 0);
    for (int g : s.elements) s.member[g] = 1;
    return s;
}

}  // namespace

Subgroup subgroup_closure(const GroupPtr& G, const std::vector<int>& gens) {
    for (int g : gens)
        if (g < 0 || g >= G->n) throw std::invalid_argument("generator index out of range");
    std::set<int> elems{G->identity};
    std::deque<int> work{G->identity};
    std::vector<int> closed_gens = gens;
    for (int g : gens) closed_gens.push_back(G->invert(g));
    while (!work.empty()) {
        int x = work.front();
        work.pop_front();
        for (int g : closed_gens) {
            int y = G->mul(x, g);
            if (elems.insert(y).second) work.push_back(y);
        }
    }
    return make_subgroup(G, std::move(elems));
}

Subgroup whole_group(const GroupPtr& G) {
    std::set<int> all;
    for (int i = 0; i < G->n; ++i) all.insert(i);
    return make_subgroup(G, std::move(all));
}

Subgroup trivial_subgroup(const GroupPtr& G) { return make_subgroup(G, {G->identity}); }

std::vector<int> generating_set(const Subgroup& F) {
    std::vector<int> gens;
    Subgroup cur = trivial_subgroup(F.group);
    for (int g : F.elements) {
        if (cur.contains(g)) continue;
        gens.push_back(g);
        cur = subgroup_closure(F.group, gens);
        if (cur.order() == F.order()) break;
    }
    return gens;
}

ConjugacyData f_conjugacy_classes(const GroupPtr& G, const Subgroup& F) {
    ConjugacyData cd;
    cd.acting = F;
    cd.class_of.assign(G->n, -1);
    for (int g = 0; g < G->n; ++g) {
        if (cd.class_of[g] >= 0) continue;
        std::set<int> orbit;
        for (int f : F.elements) orbit.insert(G->conj(f, g));
        int id = static_cast<int>(cd.classes.size());
        cd.classes.emplace_back(orbit.begin(), orbit.end());
        for (int h : cd.classes.back()) cd.class_of[h] = id;
    }
    return cd;
}

FcData fc_data(const GroupPtr& G, const Subgroup& F) {
    ConjugacyData cd = f_conjugacy_classes(G, F);
    FcData out;
    // every class in a finite group is finite, so FC_G(F) = G; assert it by
    // checking the class sizes directly and the subgroup axioms on the result
    std::set<int> fc;
    for (int g = 0; g < G->n; ++g)
        if (!cd.classes[cd.class_of[g]].empty()) fc.insert(g);
    out.fc_subgroup = make_subgroup(G, std::move(fc));
    if (out.fc_subgroup.order() != G->n) throw std::logic_error("FC_G(F) != G for a finite group");
    for (int a : out.fc_subgroup.elements)
        for (int b : out.fc_subgroup.elements)
            if (!out.fc_subgroup.contains(G->mul(a, b)) || !out.fc_subgroup.contains(G->invert(a)))
                throw std::logic_error("FC_G(F) is not closed");

    out.centralizer_index.assign(G->n, 0);
    for (int g = 0; g < G->n; ++g) {
        long cent = 0;
        for (int f : F.elements)
            if (G->mul(f, g) == G->mul(g, f)) ++cent;
        long index = F.order() / cent;
        long orbit = static_cast<long>(cd.classes[cd.class_of[g]].size());
        if (index != orbit) throw std::logic_error("orbit-stabilizer mismatch");
        out.centralizer_index[g] = index;
    }
    return out;
}

int word_length(const FiniteGroup& G, std::vector<int> sigma, int g) {
    for (int s : sigma)
        if (s < 0 || s >= G.n) throw std::invalid_argument("generator index out of range");
    // symmetrize
    std::set<int> sym(sigma.begin(), sigma.end());
    for (int s : sigma) sym.insert(G.invert(s));
    std::vector<int> dist(G.n, -1);
    dist[G.identity] = 0;
    std::deque<int> work{G.identity};
    while (!work.empty()) {
        int x = work.front();
        work.pop_front();
        for (int s : sym) {
            int y = G.mul(x, s);
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                work.push_back(y);
            }
        }
    }
    if (dist[g] < 0) throw std::domain_error("element outside the subgroup generated by sigma");
    return dist[g];
}

SubgroupGroup subgroup_as_group(const Subgroup& F) {
    SubgroupGroup out;
    out.to_parent = F.elements;
    out.from_parent.assign(F.group->n, -1);
    for (std::size_t i = 0; i < F.elements.size(); ++i) out.from_parent[F.elements[i]] = static_cast<int>(i);
    const int m = F.order();
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int prod = F.group->mul(F.elements[a], F.elements[b]);
            int idx = out.from_parent[prod];
            if (idx < 0) throw std::invalid_argument("element set is not closed under products");
            table[a][b] = idx;
        }
    out.group = build_group_from_table(table, std::max(kDefaultGroupSizeCap, m));
    return out;
}

ProductGroup direct_product(const GroupPtr& F, const GroupPtr& G) {
    const int nf = F->n, ng = G->n;
    const int n = nf * ng;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    auto enc = [ng](int f, int g) { return f * ng + g; };
    for (int f1 = 0; f1 < nf; ++f1)
        for (int g1 = 0; g1 < ng; ++g1)
            for (int f2 = 0; f2 < nf; ++f2)
                for (int g2 = 0; g2 < ng; ++g2)
                    table[enc(f1, g1)][enc(f2, g2)] = enc(F->mul(f1, f2), G->mul(g1, g2));
    ProductGroup out;
    out.group = build_group_from_table(table, std::max(kDefaultGroupSizeCap, n));
    out.left_embed.resize(nf);
    out.right_embed.resize(ng);
    for (int f = 0; f < nf; ++f) out.left_embed[f] = enc(f, G->identity);
    for (int g = 0; g < ng; ++g) out.right_embed[g] = enc(F->identity, g);
    return out;
}

}  // namespace cochainlab
