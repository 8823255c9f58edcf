#include "cochainlab/algebra.hpp"

#include <stdexcept>

#include "cochainlab/linalg.hpp"

namespace cochainlab {

namespace {

void require_same_group(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.group.get() != b.group.get()) throw std::invalid_argument("mismatched groups");
}

}  // namespace

Rat AlgebraElement::augmentation() const {
    Rat s = 0;
    for (const auto& [g, v] : coeffs) s += v;
    return s;
}

AlgebraElement delta(const GroupPtr& G, int g) {
    if (g < 0 || g >= G->n) throw std::invalid_argument("element index out of range");
    AlgebraElement x(G);
    x.set(g, Rat(1));
    return x;
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_group(a, b);
    AlgebraElement c(a.group);
    c.coeffs = a.coeffs;
    for (const auto& [g, v] : b.coeffs) {
        auto it = c.coeffs.find(g);
        if (it == c.coeffs.end()) {
            c.coeffs.emplace(g, v);
        } else {
            it->second += v;
            if (it->second == 0) c.coeffs.erase(it);
        }
    }
    return c;
}

AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) {
    return add(a, scale(Rat(-1), b));
}

AlgebraElement scale(const Rat& s, const AlgebraElement& a) {
    AlgebraElement c(a.group);
    if (s == 0) return c;
    for (const auto& [g, v] : a.coeffs) c.coeffs.emplace(g, s * v);
    return c;
}

AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_group(a, b);
    AlgebraElement c(a.group);
    const FiniteGroup& G = *a.group;
    for (const auto& [g, va] : a.coeffs)
        for (const auto& [f, vb] : b.coeffs) {
            int h = G.mul(g, f);
            auto it = c.coeffs.find(h);
            if (it == c.coeffs.end())
                c.coeffs.emplace(h, va * vb);
            else
                it->second += va * vb;
        }
    for (auto it = c.coeffs.begin(); it != c.coeffs.end();)
        it = it->second == 0 ? c.coeffs.erase(it) : std::next(it);
    return c;
}

AlgebraElement algebra_power(const AlgebraElement& a, int k) {
    if (k < 0) throw std::invalid_argument("negative algebra power");
    AlgebraElement r = delta(a.group, a.group->identity);
    for (int i = 0; i < k; ++i) r = convolve(r, a);
    return r;
}

AlgebraClassification classify(const AlgebraElement& xi) {
    AlgebraClassification c;
    c.augmentation_value = xi.augmentation();
    c.in_augmentation_ideal = c.augmentation_value == 0;
    c.in_affine_space = c.augmentation_value == 1;
    bool nonneg = true;
    for (const auto& [g, v] : xi.coeffs) nonneg = nonneg && v >= 0;
    c.in_simplex = c.in_affine_space && nonneg;
    return c;
}

AlgebraElement uniform_average(const GroupPtr& G, const std::vector<int>& S) {
    if (S.empty()) throw std::invalid_argument("uniform average over empty set");
    AlgebraElement x(G);
    Rat w(1, static_cast<unsigned long>(S.size()));
    w.canonicalize();
    for (int g : S) {
        if (g < 0 || g >= G->n) throw std::invalid_argument("element index out of range");
        x.coeffs[g] = w;  // sets ignore duplicates rather than summing
    }
    if (x.coeffs.size() != S.size()) throw std::invalid_argument("duplicate elements in set");
    return x;
}

AlgebraElement class_sum(const GroupPtr& G, const ConjugacyData& cd, int class_id) {
    if (class_id < 0 || class_id >= static_cast<int>(cd.classes.size()))
        throw std::invalid_argument("invalid class id");
    AlgebraElement x(G);
    for (int g : cd.classes[class_id]) x.set(g, Rat(1));
    return x;
}

AlgebraElement class_average(const GroupPtr& G, const ConjugacyData& cd, int class_id) {
    if (class_id < 0 || class_id >= static_cast<int>(cd.classes.size()))
        throw std::invalid_argument("invalid class id");
    return uniform_average(G, cd.classes[class_id]);
}

bool commutes_with_subgroup(const AlgebraElement& xi, const Subgroup& F) {
    for (int f : F.elements) {
        AlgebraElement d = delta(xi.group, f);
        if (!(convolve(d, xi) == convolve(xi, d))) return false;
    }
    return true;
}

CommutantBasis commutant_basis(const GroupPtr& G, const Subgroup& F) {
    CommutantBasis out;
    out.acting = F;
    out.classes = f_conjugacy_classes(G, F);
    for (int c = 0; c < static_cast<int>(out.classes.classes.size()); ++c) {
        out.basis.push_back(class_sum(G, out.classes, c));
        out.averages.push_back(class_average(G, out.classes, c));
    }
    // Independent verification: the commutation system {f·ξ - ξ·f = 0} over
    // the coefficient vector of ξ. Coefficient of h in f·ξ - ξ·f is
    // ξ(f⁻¹h) - ξ(hf⁻¹).
    const int n = G->n;
    std::vector<int> gens = generating_set(F);
    RatMatrix sys(static_cast<int>(gens.size()) * n, n);
    int row = 0;
    for (int f : gens) {
        int finv = G->invert(f);
        for (int h = 0; h < n; ++h, ++row) {
            sys.at(row, G->mul(finv, h)) += 1;
            sys.at(row, G->mul(h, finv)) -= 1;
        }
    }
    RatMatrix ker = kernel_basis(sys);
    if (ker.cols != static_cast<int>(out.basis.size()))
        throw std::logic_error("commutant dimension does not match commutation-system kernel");
    // containment: each class sum solves the system; dimension equality then
    // gives span equality
    for (const auto& b : out.basis) {
        RatVec v(n, Rat(0));
        for (const auto& [g, val] : b.coeffs) v[g] = val;
        if (!vec_is_zero(sys.apply(v))) throw std::logic_error("class sum does not commute with F");
    }
    return out;
}

}  // namespace cochainlab
