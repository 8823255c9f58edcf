#include "cochainlab/pnorm.hpp"

#include <algorithm>

namespace cochainlab {

PNorm PNorm::rational(const Rat& p) {
    if (p < 1) throw std::invalid_argument("p must satisfy p >= 1");
    return PNorm{false, p};
}

PNorm PNorm::from_string(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return infinity();
    return rational(rat_from_string(s));
}

double vec_pnorm(const std::vector<double>& v, const PNorm& p) {
    if (p.is_inf()) {
        double m = 0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
    }
    if (p.is_one()) {
        double s = 0;
        for (double x : v) s += std::fabs(x);
        return s;
    }
    double pe = p.d();
    if (pe == 2.0) {
        double s = 0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    double s = 0;
    for (double x : v) s += std::pow(std::fabs(x), pe);
    return std::pow(s, 1.0 / pe);
}

std::vector<double> duality_vector(const std::vector<double>& v, const PNorm& p) {
    std::vector<double> w(v.size(), 0.0);
    double n = vec_pnorm(v, p);
    if (n == 0) return w;
    if (p.is_inf()) {
        std::size_t arg = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (std::fabs(v[i]) > std::fabs(v[arg])) arg = i;
        w[arg] = v[arg] >= 0 ? 1.0 : -1.0;
        return w;
    }
    if (p.is_one()) {
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] > 0 ? 1.0 : (v[i] < 0 ? -1.0 : 0.0);
        return w;
    }
    double pe = p.d();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        double m = std::pow(std::fabs(v[i]) / n, pe - 1.0);
        w[i] = v[i] > 0 ? m : -m;
    }
    return w;
}

}  // namespace cochainlab
