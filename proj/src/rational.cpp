#include "cochainlab/rational.hpp"

#include <cmath>

namespace cochainlab {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in rational literal: " + s);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_from_double(double x, unsigned long max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    bool neg = x < 0;
    double v = neg ? -x : x;
    // continued-fraction convergents h/k of v with k bounded
    unsigned long h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    double frac = v;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(frac);
        if (fl > 9e18) break;
        unsigned long a = static_cast<unsigned long>(fl);
        if (k0 > 0 && a > (max_den - k1) / (k0 ? k0 : 1)) break;
        unsigned long h2 = a * h0 + h1;
        unsigned long k2 = a * k0 + k1;
        if (k2 > max_den) break;
        h1 = h0; h0 = h2;
        k1 = k0; k0 = k2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    Rat q(static_cast<long>(h0), static_cast<long>(k0 == 0 ? 1 : k0));
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

}  // namespace cochainlab
