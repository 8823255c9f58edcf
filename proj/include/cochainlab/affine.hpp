#pragma once

#include "cochainlab/fpgroup.hpp"
#include "cochainlab/homotopy.hpp"

namespace cochainlab {

/// Affine isometric action α(g)x = π(g)x + φ(g); φ is an exact 1-cocycle.
struct AffineAction {
    ModulePtr module;
    Cochain cocycle;

    RatVec apply(int g, const RatVec& x) const;
    /// Biaffine extension α(ξ)x = π(ξ)x + φ̂(ξ) for ξ ∈ 𝒜G.
    RatVec apply_affine(const AlgebraElement& xi, const RatVec& x) const;
};

/// Validates the cocycle identity exactly.
AffineAction action_from_cocycle(const ModulePtr& M, Cochain phi);
Cochain cocycle_from_action(const AffineAction& a);

struct FixedPointSet {
    bool nonempty = false;
    RatVec point;
    RatMatrix directions;  // X^G: the fixed set is point + span(directions)
};

/// Exact solve of {(I−π(g))x = φ(g)}; for finite groups the orbit barycenter
/// is cross-checked as a fixed point whenever the system is solvable.
FixedPointSet fixed_points(const AffineAction& a);

struct AlmostFixedReport {
    std::vector<double> x;
    double value = 0;  // max_{g∈E} ‖x − α(g)x‖ at the reported x
    bool reached_eps = false;
};

/// Subgradient minimization of the maximal displacement over E (16 restarts,
/// step c/√t); returns an exact fixed point whenever one exists.
AlmostFixedReport almost_fixed_point(const AffineAction& a, const std::vector<int>& E, double eps,
                                     std::uint64_t seed = 1, int iters = 10000, int restarts = 16);

/// conv(α(G)x) = α(ΔG)x: random convex combinations of orbit points match the
/// biaffine evaluation exactly, and hull points admit exact weight solutions.
bool delta_orbit_hull_check(const AffineAction& a, const RatVec& x, int trials, DetRng& rng);

struct QuotientDisplacementReport {
    int samples = 0;
    int failures = 0;
    bool exact = false;  // p = 2 path, exact rational comparisons
    double max_violation = 0;
    bool cocycle_form_checked = false;
    bool pass = false;
};

/// ½‖x−π(g)x‖ ≤ ‖x̄−π̄(g)x̄‖ ≤ ‖x−π(g)x‖ on random (x,g), plus the cocycle
/// form (automatic hypothesis for finite groups: φ(gⁿ) is bounded).
QuotientDisplacementReport quotient_displacement_check(const ModulePtr& M, int samples,
                                                       std::uint64_t seed = 1);

struct GuichardetReport {
    int dim_B1 = 0;
    int dim_B1_closure = 0;  // equal by finite-dimensionality
    bool b1_closed = true;
    int quotient_dim = 0;
    bool quotient_average_vanishes = false;  // certifies no a.i.v. on X/X^G
    double quotient_norm_bound = 0;
    bool pass = false;
};

GuichardetReport guichardet_criterion(const ModulePtr& M);

/// Affine action of an fp group, given by generator translation values whose
/// tuple lies in Z¹.
struct FpAffineAction {
    FpPresentation pres;
    FpModule module;
    std::vector<RatVec> gen_values;
};

FpAffineAction fp_action_from_cocycle(const FpPresentation& P, const FpModule& M,
                                      std::vector<RatVec> gen_values);

FixedPointSet fp_fixed_points(const FpAffineAction& a);

/// Displacement minimization over the generator set.
AlmostFixedReport fp_almost_fixed_point(const FpAffineAction& a, double eps, std::uint64_t seed = 1,
                                        int iters = 10000, int restarts = 16);

struct QuotientInjectivityReport {
    bool applicable = false;  // abelianization rank 0 and trivial-rep H¹ = 0
    int abelianization_rank = 0;
    int trivial_h1 = 0;
    bool injective = false;
};

/// §-appendix property: for homomorphism-free groups the quotient cochain map
/// is injective on Z¹ (exact kernel computation).
QuotientInjectivityReport quotient_injectivity_check(const FpPresentation& P, const FpModule& M);

}  // namespace cochainlab
