#pragma once

#include <map>

#include "cochainlab/group.hpp"
#include "cochainlab/rational.hpp"

namespace cochainlab {

/// Element of the group algebra ℝG with exact rational coefficients.
/// Support is normalized (no zero coefficients) so equality is structural.
struct AlgebraElement {
    GroupPtr group;
    std::map<int, Rat> coeffs;

    AlgebraElement() = default;
    explicit AlgebraElement(GroupPtr g) : group(std::move(g)) {}

    Rat coeff(int g) const {
        auto it = coeffs.find(g);
        return it == coeffs.end() ? Rat(0) : it->second;
    }
    void set(int g, const Rat& v) {
        if (v == 0)
            coeffs.erase(g);
        else
            coeffs[g] = v;
    }
    bool is_zero() const { return coeffs.empty(); }
    Rat augmentation() const;

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.coeffs == b.coeffs;
    }
};

AlgebraElement delta(const GroupPtr& G, int g);
AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scale(const Rat& s, const AlgebraElement& a);

/// Convolution product (ξ∗ζ)(h) = Σ_g ξ(g)·ζ(g⁻¹h). Throws on mismatched
/// groups.
AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement algebra_power(const AlgebraElement& a, int k);

/// Membership flags for the augmentation ideal 𝔐G, the affine space 𝒜G and
/// the simplex ΔG.
struct AlgebraClassification {
    bool in_augmentation_ideal = false;
    bool in_affine_space = false;
    bool in_simplex = false;
    Rat augmentation_value;
};

AlgebraClassification classify(const AlgebraElement& xi);

/// Coefficient 1/|S| on each element of S. Throws on empty S.
AlgebraElement uniform_average(const GroupPtr& G, const std::vector<int>& S);

AlgebraElement class_sum(const GroupPtr& G, const ConjugacyData& cd, int class_id);
AlgebraElement class_average(const GroupPtr& G, const ConjugacyData& cd, int class_id);

/// Basis of the commutant F' of F in ℝG: the F-class sums, together with the
/// class averages. Construction independently verifies that the span equals
/// the exact solution space of the commutation system {f·ξ = ξ·f}.
struct CommutantBasis {
    Subgroup acting;
    ConjugacyData classes;
    std::vector<AlgebraElement> basis;     // class sums
    std::vector<AlgebraElement> averages;  // class averages
};

CommutantBasis commutant_basis(const GroupPtr& G, const Subgroup& F);

/// Exact check that f·ξ = ξ·f for every f in F.
bool commutes_with_subgroup(const AlgebraElement& xi, const Subgroup& F);

}  // namespace cochainlab
