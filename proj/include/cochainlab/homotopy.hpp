#pragma once

#include "cochainlab/cochain.hpp"

namespace cochainlab {

/// R_ξ(φ) = Σ_i t_i φ(g_i) for a degree-1 cochain; equals φ̂(ξ).
/// Requires ξ ∈ ΔG.
RatVec r_xi(const Cochain& phi, const AlgebraElement& xi);

/// Matrix of R_ξ on flat C¹ coordinates (d × N·d).
RatMatrix r_xi_matrix(const BanachModule& M, const AlgebraElement& xi);

/// Exact inverse of I − π(ξ); throws std::domain_error when singular.
RatMatrix invert_one_minus_direct(const BanachModule& M, const AlgebraElement& xi);

/// Neumann partial sum Σ_{n≤k} π(ξ)^n with a certified residual bound
/// derived from a certified norm bound on a power of π(ξ).
struct NeumannResult {
    RatMatrix sum;
    int terms = 0;               // k (included powers 0..k)
    double residual_bound = 0;   // certified bound on ‖inverse − sum‖
    int cert_power = 1;          // m with ‖π(ξ)^m‖ < 1 certified
};

NeumannResult invert_one_minus_neumann(const BanachModule& M, const AlgebraElement& xi, int k_max,
                                       double tol);

/// The Nowak projection P = ∂¹ ∘ (I−π(ξ))⁻¹ ∘ R_ξ on flat C¹ coordinates,
/// with the exact verification P² = P, im P = B¹ and the dimension split
/// dim C¹ = dim B¹ + dim ker R_ξ.
struct SplittingReport {
    int degree = 1;
    RatMatrix projector;
    int dim_C = 0;
    int dim_B = 0;
    int dim_ker_R = 0;
    bool idempotent = false;
    bool image_equals_B = false;
};

SplittingReport nowak_projection(const ModulePtr& M, const AlgebraElement& xi);

/// The degree-shifting homotopy operator
/// (R^{n+1}φ)(f_1,…,f_n) = Σ_{i=1}^{n+1} (−1)^{i+1} φ̂(f_1,…,f_{i−1}, ξ, f_i,…,f_n),
/// mapping a degree-(n+1) cochain on G to a degree-n cochain on F.
/// Requires ξ ∈ F′ ∩ ΔG; the commutation is verified exactly.
Cochain homotopy_R(const Cochain& phi, const AlgebraElement& xi, const RestrictedModule& F);

/// Residual report for S − T = ∂R + R∂ with Sφ = φ|_F, Tφ = π(ξ)∘φ|_F,
/// on random exact cochains of each requested degree.
struct HomotopyIdentityReport {
    bool exact_zero = true;
    int samples = 0;
    std::vector<int> degrees;
    long first_failure_flat = -1;  // flat coordinate of the first nonzero residual
    int first_failure_degree = -1;
};

HomotopyIdentityReport verify_homotopy_identity(const ModulePtr& M, const AlgebraElement& xi,
                                                const Subgroup& F, const std::vector<int>& degrees,
                                                int samples, DetRng& rng);

/// Contracting homotopy K = (I−π(ξ))⁻¹ ∘ R for ξ ∈ G′ ∩ ΔG with I−π(ξ)
/// invertible; witnesses split exactness via I = ∂K + K∂.
struct ContractingHomotopy {
    ModulePtr module;
    AlgebraElement xi;
    RatMatrix inverse;

    /// K^n applied to a degree-n cochain (n ≥ 1); degree 0 maps to the zero
    /// object.
    Cochain apply(const Cochain& phi) const;
};

ContractingHomotopy contracting_homotopy(const ModulePtr& M, const AlgebraElement& xi);

/// Exact check of I = ∂K + K∂ on `samples` random cochains per degree.
/// On failure the witness records where the first nonzero residual sits.
struct ContractingIdentityReport {
    bool exact_zero = true;
    int samples = 0;
    int first_failure_degree = -1;
    long first_failure_flat = -1;
};

ContractingIdentityReport verify_contracting_identity(const ContractingHomotopy& K,
                                                      const std::vector<int>& degrees, int samples,
                                                      DetRng& rng);

/// ξ ∈ ΔF and ζ ∈ F′ ∩ ΔG with a certified contraction bound for π(ξζ).
struct ContractingPair {
    AlgebraElement xi;
    AlgebraElement zeta;
    double norm_bound = 0;
    std::string certificate;
};

ContractingPair find_contracting_pair(const ModulePtr& M, const Subgroup& F);

/// ψ = (I−π(ξ))⁻¹ ∘ (R^n φ) with ∂ψ = φ|_F for cocycles φ.
Cochain restriction_nullifier(const Cochain& cocycle, const Subgroup& F, const AlgebraElement& xi,
                              const RestrictedModule& FR);

struct ShrinkBudget {
    int max_word_len = 8;
    int opt_iters = 10000;
    int max_candidates = 4096;
};

/// Sequential contraction procedure: for each x ∈ E, find T ∈ conv(words of
/// the semigroup generators) driving ‖π(·)x‖ below ε, composing the steps.
struct ShrinkResult {
    AlgebraElement xi;
    std::vector<double> achieved;  // ‖π(ξ)x‖ per input (exact when p = 2)
    double best_bound = 0;         // max over E
    bool success = false;
    bool certified = false;  // exact p=2 comparison against ε
    int steps = 0;
};

ShrinkResult shrinking_average(const ModulePtr& M, const std::vector<AlgebraElement>& generators,
                               const std::vector<RatVec>& E, double eps,
                               const ShrinkBudget& budget = {}, std::uint64_t seed = 1);

/// ψ = (φ − π(ξ)∘φ)|_F ∈ B^n(F,X) with sup_{f⃗∈E} ‖φ(f⃗) − ψ(f⃗)‖ < ε.
struct WitnessResult {
    Cochain psi;
    AlgebraElement xi;
    double sup_bound = 0;
    bool success = false;
    bool certified = false;
    bool membership_verified = false;  // ψ ∈ B^n(F,X), exact
};

WitnessResult almost_coboundary_witness(const Cochain& cocycle, const Subgroup& F,
                                        const std::vector<std::vector<int>>& E, double eps,
                                        const ShrinkBudget& budget = {}, std::uint64_t seed = 1);

/// x with ‖Σ_{g∈Σ}(φ−∂x)(g)‖ < ε via ξ ∈ conv{σ^n : n ≥ 1}, σ the uniform
/// average over Σ ∪ {e}.
struct DecayResult {
    RatVec x;
    AlgebraElement xi;
    double bound = 0;
    bool success = false;
    bool certified = false;
    int power_used = 0;
};

DecayResult generator_average_decay(const Cochain& phi, std::vector<int> sigma, double eps,
                                    const ShrinkBudget& budget = {}, std::uint64_t seed = 1);

}  // namespace cochainlab
