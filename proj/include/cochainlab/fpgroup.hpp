#pragma once

#include <string>
#include <vector>

#include "cochainlab/linalg.hpp"
#include "cochainlab/pnorm.hpp"

namespace cochainlab {

/// Finitely presented group: generator symbols and freely reduced relator
/// words. Letters are encoded as ±(index+1); capital letters in the string
/// form denote inverses.
struct FpPresentation {
    std::vector<std::string> generators;
    std::vector<std::vector<int>> relators;
};

FpPresentation make_fp_presentation(const std::vector<std::string>& generators,
                                    const std::vector<std::string>& relator_words);

std::vector<int> parse_word(const FpPresentation& P, const std::string& word);
std::vector<int> free_reduce(std::vector<int> word);

/// Finite-dimensional module over an fp group: exact invertible generator
/// matrices with relator products verified to be the identity, under the same
/// isometry criterion as finite-group modules.
struct FpModule {
    int dim = 0;
    std::vector<RatMatrix> gen_mats;
    std::vector<RatMatrix> gen_inverses;
    PNorm p;
};

FpModule build_fp_module(const FpPresentation& P, std::vector<RatMatrix> generator_matrices,
                         const PNorm& p);

/// π(w) for a word in the generators.
RatMatrix fp_word_matrix(const FpModule& M, const std::vector<int>& word);

/// Degree-1 cocycles of an fp group: a cocycle is its tuple of generator
/// values, a relator r imposes φ(r) = 0, and word evaluation extends by
/// φ(uw) = π(u)φ(w) + φ(u) with φ(s⁻¹) = −π(s)⁻¹φ(s).
struct FpCocycleSpace {
    int dim_Z = 0;
    int dim_B = 0;
    int dim_H = 0;
    RatMatrix basis_Z;  // (k·d) × dim_Z
    RatMatrix basis_B;
};

FpCocycleSpace fp_cocycle_space(const FpPresentation& P, const FpModule& M);

/// d × (k·d) matrix taking generator values to φ(word).
RatMatrix word_evaluation_matrix(const FpPresentation& P, const FpModule& M,
                                 const std::vector<int>& word);

using IntMatrix = std::vector<std::vector<Int>>;

/// Smith normal form diagonal (nonzero entries, divisibility chain).
std::vector<Int> smith_diagonal(IntMatrix m);

/// Relator exponent-sum matrix (relators × generators).
IntMatrix relator_exponent_matrix(const FpPresentation& P);

/// Free rank of the abelianization, via integer Smith normal form.
int abelianization_free_rank(const FpPresentation& P);

}  // namespace cochainlab
