#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cochainlab/rational.hpp"

namespace cochainlab {

/// Deterministic RNG. mt19937_64 output is fixed by the standard; the
/// distributions below are hand-rolled so streams are identical across
/// platforms and standard libraries.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, n), n > 0, by rejection.
    int below(int n) {
        const std::uint64_t bound = ~std::uint64_t{0} - (~std::uint64_t{0} % static_cast<std::uint64_t>(n));
        std::uint64_t v;
        do { v = eng_(); } while (v >= bound);
        return static_cast<int>(v % static_cast<std::uint64_t>(n));
    }

    /// Uniform double in [0,1) with 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * (1.0 / 9007199254740992.0); }

    /// Small exact rational: numerator in [-max_num, max_num], denominator in [1, max_den].
    Rat small_rat(int max_num = 3, int max_den = 3) {
        int num = below(2 * max_num + 1) - max_num;
        int den = 1 + below(max_den);
        return rat_of(num, den);
    }

    /// Nonzero variant of small_rat.
    Rat small_rat_nonzero(int max_num = 3, int max_den = 3) {
        Rat q;
        do { q = small_rat(max_num, max_den); } while (q == 0);
        return q;
    }

    std::vector<Rat> rat_vector(int n, int max_num = 3, int max_den = 3) {
        std::vector<Rat> v(n);
        for (auto& x : v) x = small_rat(max_num, max_den);
        return v;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace cochainlab
