#pragma once

#include <memory>
#include <optional>
#include <string>

#include "cochainlab/algebra.hpp"
#include "cochainlab/linalg.hpp"
#include "cochainlab/pnorm.hpp"
#include "cochainlab/rng.hpp"

namespace cochainlab {

/// Finite-dimensional isometric Banach G-module: exact rational matrices
/// π(g) acting on ℝ^dim with the ℓ^p norm. For p = 2 the norm may carry an
/// exact Gram matrix (‖x‖² = xᵀGx), which is how invariant-subspace
/// restrictions of standard modules stay exactly isometric; for p ≠ 2 only
/// signed-permutation matrices are accepted (they are the ℓ^p isometries).
struct BanachModule {
    GroupPtr group;
    int dim = 0;
    std::vector<RatMatrix> mats;
    PNorm p;
    RatMatrix gram;           // identity unless a restricted module
    bool gram_identity = true;

    const RatMatrix& mat(int g) const { return mats[g]; }
    /// ‖x‖² as an exact rational (p = 2 only).
    Rat norm2_squared(const RatVec& x) const;
    double norm(const std::vector<double>& x) const;
    double norm(const RatVec& x) const;
};

using ModulePtr = std::shared_ptr<const BanachModule>;

/// Left-regular representation: d = |G|, permutation matrices of left
/// translation.
ModulePtr build_regular_module(const GroupPtr& G, const PNorm& p);

/// Permutation action on a finite set: action[g] lists images of the points.
ModulePtr build_permutation_module(const GroupPtr& G, const std::vector<std::vector<int>>& action,
                                   const PNorm& p);

/// Matrices for a generating set; the rest are produced by closure along the
/// multiplication table. Throws when generator matrices are inconsistent with
/// the relations or fail the isometry criterion for the requested p.
ModulePtr build_matrix_module(const GroupPtr& G, const std::map<int, RatMatrix>& generator_mats,
                              const PNorm& p);

/// Full element -> matrix assignment (verified).
ModulePtr build_module_from_matrices(const GroupPtr& G, std::vector<RatMatrix> mats, const PNorm& p,
                                     RatMatrix gram = RatMatrix());

ModulePtr trivial_module(const GroupPtr& G, int dim, const PNorm& p);

/// π extended to the group algebra: Σ ξ(g)·π(g), exact.
RatMatrix apply_algebra(const BanachModule& M, const AlgebraElement& xi);

/// Alaoglu–Birkhoff data: X = X^H ⊕ X_H with the averaging projector.
struct Decomposition {
    RatMatrix invariant_basis;   // columns span X^H
    RatMatrix complement_basis;  // columns span X_H
    RatMatrix projector;         // π(uniform over H)
};

Decomposition invariants_and_decomposition(const BanachModule& M, const Subgroup& H);

/// Certified bounds lower ≤ ‖A‖_{p→p} ≤ upper. Exact for p ∈ {1,∞} (column /
/// row sums) and certified by exact rational bisection for p = 2; for other p
/// the bounds come from multistart maximization and interpolation /
/// Collatz–Wielandt bounds and the achieved gap is reported.
struct OperatorNormBounds {
    double lower = 0;
    double upper = 0;
    bool certified = false;
    std::string method;
};

OperatorNormBounds operator_norm(const RatMatrix& A, const PNorm& p,
                                 const RatMatrix* gram = nullptr, std::uint64_t seed = 1);

/// Exact certificate that ‖A‖_{p→p} < 1 (p ∈ {1,2,∞} only; false means
/// "not certified", not "false").
bool norm_strictly_below_one(const RatMatrix& A, const PNorm& p, const RatMatrix* gram = nullptr);

/// Certificate that the spectral radius of A is < 1 via a certified norm
/// bound on some power: ‖A^m‖ < 1. Sufficient for invertibility of I−A and
/// Neumann-tail estimates. Returns the m used, or nullopt.
std::optional<int> spectral_radius_below_one(const RatMatrix& A, const PNorm& p,
                                             const RatMatrix* gram = nullptr, int max_power = 64);

/// Report for the almost-invariant-vector check on a subgroup H.
struct AlmostInvariantReport {
    bool has_invariant_unit = false;
    std::optional<AlgebraElement> gap_witness;  // uniform over H when X^H = 0
    double norm_bound = 0;                      // certified ‖π(ξ)‖ for the witness
    bool convexity_warning = false;             // p ∈ {1,∞}
    int invariant_dim = 0;
};

AlmostInvariantReport almost_invariant_check(const BanachModule& M, const Subgroup& H);

/// Quotient module X/X^H with the induced action and the quotient norm
/// ‖x̄‖ = inf_{z∈X^H} ‖x+z‖ (exact for p = 2, numeric otherwise).
struct QuotientModule {
    ModulePtr base;
    RatMatrix subspace_basis;    // X^H
    RatMatrix complement_basis;  // coordinates of the quotient
    int quotient_dim = 0;
    std::vector<RatMatrix> action;

    /// Exact squared quotient norm of a base-coordinate vector (p = 2).
    Rat quotient_norm2_squared(const RatVec& x) const;
    /// Quotient norm, numeric for p ≠ 2 (projected subgradient).
    double quotient_norm(const RatVec& x, double tol = 1e-8, int max_iter = 10000) const;
    RatVec project_to_quotient(const RatVec& x) const;  // coordinates in complement basis
    RatVec lift(const RatVec& qcoords) const;

private:
    friend QuotientModule quotient_module(const ModulePtr& M, const Subgroup& H);
    RatMatrix proj_;  // G-orthogonal projector onto X^H (p = 2 path)
    bool have_proj_ = false;
    RatMatrix full_inverse_;  // [C|B]^{-1} for coordinate extraction
};

QuotientModule quotient_module(const ModulePtr& M, const Subgroup& H);

struct ConvexityReport {
    PNorm p;
    double epsilon = 0;
    double delta_estimate = 0;
    std::string method;  // "exact" or "sampled"
    /// The sup-form dual modulus ω(t) = sup{‖x−y‖ : ‖x‖,‖y‖ ≤ 1, ‖x+y‖ ≥ t}
    /// evaluated at t = 2 − ε (exact closed form at p = 2, sampled otherwise).
    /// No operation consumes it; it is report-only.
    double omega_estimate = 0;
};

ConvexityReport convexity_modulus(const PNorm& p, double epsilon, int dim,
                                  const std::string& mode = "auto", std::uint64_t seed = 1);

/// Restriction of the module to an exactly invariant subspace (columns of
/// `basis`); carries the inherited Gram norm. p = 2 only.
ModulePtr submodule(const ModulePtr& M, const RatMatrix& basis);

/// The module seen as an F-module over the subgroup's own index space.
struct RestrictedModule {
    ModulePtr module;
    SubgroupGroup sub;
};

RestrictedModule restrict_to_subgroup(const ModulePtr& M, const Subgroup& F);

/// ℓ^p (or Gram) norm of a rational vector evaluated in floating point.
double module_vec_norm(const BanachModule& M, const RatVec& x);

}  // namespace cochainlab
