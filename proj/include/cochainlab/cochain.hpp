#pragma once

#include <optional>

#include "cochainlab/module.hpp"

namespace cochainlab {

struct CochainCaps {
    int degree_cap = 3;
    long flat_cap = 2000000;  // N^n·d storage cap
};

/// Bar cochain: a map G^n -> X stored as a dense tensor of exact rationals.
/// Flattening is row-major with the leftmost group index slowest, fixed so
/// bases are reproducible.
struct Cochain {
    ModulePtr module;
    int degree = 0;
    std::vector<Rat> values;

    int group_order() const { return module->group->n; }
    long tuples() const;
    long flat_size() const { return tuples() * module->dim; }

    long tuple_index(const std::vector<int>& tuple) const;
    RatVec at(const std::vector<int>& tuple) const;
    void set(const std::vector<int>& tuple, const RatVec& v);
    bool is_zero() const;

    friend Cochain operator+(const Cochain& x, const Cochain& y);
    friend Cochain operator-(const Cochain& x, const Cochain& y);
    friend bool operator==(const Cochain& x, const Cochain& y);
};

Cochain zero_cochain(const ModulePtr& M, int degree);
/// Degree-0 cochain identified with a vector in X.
Cochain cochain_from_vector(const ModulePtr& M, RatVec x);
Cochain random_cochain(const ModulePtr& M, int degree, DetRng& rng);
Cochain scale_cochain(const Rat& s, const Cochain& c);
/// Post-composition A ∘ φ (A applied to every value).
Cochain postcompose(const RatMatrix& A, const Cochain& c);

/// The coboundary (∂^{n+1}φ), computed by the direct alternating-sum formula.
Cochain apply_coboundary(const Cochain& phi, const CochainCaps& caps = {});

bool is_cocycle(const Cochain& phi, const CochainCaps& caps = {});

/// Sparse matrix of ∂^{n+1} : C^n -> C^{n+1} on flat coordinates.
struct CoboundaryMatrix {
    int degree = 0;  // n
    SparseRatMatrix mat;
};

CoboundaryMatrix coboundary_matrix(const ModulePtr& M, int n, const CochainCaps& caps = {});

struct CohomologyReport {
    int degree = 0;
    long dim_C = 0;
    int dim_Z = 0;
    int dim_B = 0;
    int dim_H = 0;
    std::optional<RatMatrix> basis_Z;  // flat coordinates, exact mode
    std::optional<RatMatrix> basis_B;
    bool float_checked = false;
    bool float_agrees = false;
};

/// Exact kernel/image ranks of the coboundary matrices. Bases are produced
/// when the flat dimension stays under `basis_cap`. When `float_check` is
/// set, singular-value-free float ranks (tolerance 1e-9) are compared with
/// the exact ones.
CohomologyReport cohomology(const ModulePtr& M, int n, bool want_bases = true,
                            bool float_check = false, const CochainCaps& caps = {},
                            long basis_cap = 4096);

/// Evaluate the multiaffine extension φ̂ at elements of the group affine
/// space 𝒜G (each argument must have augmentation exactly 1).
RatVec multiaffine_eval(const Cochain& phi, const std::vector<AlgebraElement>& args);

/// The multilinear extension φ̃ (no augmentation guard). Kept separate: the
/// coboundary formulas are only compatible with the affine extension.
RatVec multilinear_eval(const Cochain& phi, const std::vector<AlgebraElement>& args);

/// Restriction φ|_F as a cochain over the subgroup's own module.
Cochain restriction(const Cochain& phi, const RestrictedModule& F);

/// Read a flat coordinate vector back as a cochain.
Cochain cochain_from_flat(const ModulePtr& M, int degree, const RatVec& flat);

}  // namespace cochainlab
