#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cochainlab {

using Rat = mpq_class;
using Int = mpz_class;

/// Parse "p/q" or "p" (exact, arbitrary precision). Throws on malformed input
/// or zero denominator.
Rat rat_from_string(const std::string& s);

/// Canonical form: "p/q", or just "p" when q == 1.
std::string rat_to_string(const Rat& q);

/// Bit length of numerator plus denominator; the pivot-selection weight used
/// by the exact elimination routines.
inline std::size_t rat_bits(const Rat& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

inline std::size_t int_bits(const Int& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

inline Rat rat_of(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline double rat_to_double(const Rat& q) { return q.get_d(); }

/// Nearby rational with bounded denominator (continued-fraction convergent).
/// Used to turn float optimizer output back into exact simplex weights.
Rat rat_from_double(double x, unsigned long max_den = 1u << 20);

}  // namespace cochainlab
