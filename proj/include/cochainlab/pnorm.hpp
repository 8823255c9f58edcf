#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cochainlab/rational.hpp"

namespace cochainlab {

/// Norm parameter p in {1} ∪ (1,∞) ∪ {∞}, stored exactly (rational or the
/// symbol ∞). Float conversion happens only inside norm evaluations.
struct PNorm {
    bool inf = false;
    Rat value = Rat(2);

    static PNorm one() { return PNorm{false, Rat(1)}; }
    static PNorm two() { return PNorm{false, Rat(2)}; }
    static PNorm infinity() { return PNorm{true, Rat(0)}; }
    static PNorm rational(const Rat& p);
    static PNorm from_string(const std::string& s);

    bool is_one() const { return !inf && value == 1; }
    bool is_two() const { return !inf && value == 2; }
    bool is_inf() const { return inf; }
    /// Strict convexity holds for ℓ^p exactly when 1 < p < ∞.
    bool strictly_convex() const { return !inf && value > 1; }
    double d() const { return inf ? std::numeric_limits<double>::infinity() : rat_to_double(value); }
    std::string str() const { return inf ? "inf" : rat_to_string(value); }

    bool operator==(const PNorm& o) const { return inf == o.inf && (inf || value == o.value); }
};

/// ℓ^p norm of a float vector.
double vec_pnorm(const std::vector<double>& v, const PNorm& p);

/// Duality map entry-wise: w_i = sign(v_i) |v_i|^{p-1} / ‖v‖^{p-1}; for p=∞
/// the subgradient supported on a max-magnitude coordinate. Returns a norming
/// functional (ℓ^{p'} unit vector with ⟨w,v⟩ = ‖v‖_p) used by subgradient code.
std::vector<double> duality_vector(const std::vector<double>& v, const PNorm& p);

}  // namespace cochainlab
