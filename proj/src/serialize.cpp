#include "cochainlab/serialize.hpp"

#include <stdexcept>

namespace cochainlab {

GroupPtr group_from_json(const Json& j, int size_cap) {
    if (!j.is_object() || !j.contains("type")) throw std::invalid_argument("group spec needs a type");
    std::string type = j.at("type").get<std::string>();
    if (type == "table") {
        auto mul = j.at("mul").get<std::vector<std::vector<int>>>();
        return build_group_from_table(mul, size_cap);
    }
    if (type == "permutation") {
        int degree = j.at("degree").get<int>();
        auto gens = j.at("generators").get<std::vector<std::vector<int>>>();
        return build_group_from_permutations(degree, gens, size_cap).group;
    }
    throw std::invalid_argument("unknown group spec type: " + type);
}

PNorm pnorm_from_json(const Json& j) {
    if (j.is_string()) return PNorm::from_string(j.get<std::string>());
    if (j.is_number_integer()) return PNorm::rational(Rat(j.get<long>()));
    throw std::invalid_argument("p must be a string like \"2\" or \"inf\"");
}

ModulePtr module_from_json(const GroupPtr& G, const Json& rep, const PNorm& p) {
    if (!rep.is_object() || !rep.contains("kind")) throw std::invalid_argument("rep spec needs a kind");
    std::string kind = rep.at("kind").get<std::string>();
    if (kind == "regular") return build_regular_module(G, p);
    if (kind == "permutation") {
        auto action = rep.at("action").get<std::vector<std::vector<int>>>();
        return build_permutation_module(G, action, p);
    }
    if (kind == "matrices") {
        std::map<int, RatMatrix> gens;
        for (const auto& [key, val] : rep.at("entries").items())
            gens[std::stoi(key)] = matrix_from_json(val);
        return build_matrix_module(G, gens, p);
    }
    if (kind == "trivial") {
        int dim = rep.value("dim", 1);
        return trivial_module(G, dim, p);
    }
    throw std::invalid_argument("unknown rep spec kind: " + kind);
}

AlgebraElement algebra_from_json(const GroupPtr& G, const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("algebra element must be an object");
    AlgebraElement x(G);
    for (const auto& [key, val] : j.items()) {
        int g = std::stoi(key);
        if (g < 0 || g >= G->n) throw std::invalid_argument("element index out of range");
        x.set(g, rat_from_string(val.get<std::string>()));
    }
    return x;
}

Json algebra_to_json(const AlgebraElement& x) {
    Json j = Json::object();
    for (const auto& [g, v] : x.coeffs) j[std::to_string(g)] = rat_to_string(v);
    return j;
}

Cochain cochain_from_json(const ModulePtr& M, const Json& j) {
    int degree = j.at("degree").get<int>();
    Cochain c = zero_cochain(M, degree);
    if (!j.contains("values")) return c;
    for (const auto& [key, val] : j.at("values").items()) {
        std::vector<int> tuple;
        if (!key.empty()) {
            std::size_t pos = 0;
            while (pos < key.size()) {
                std::size_t comma = key.find(',', pos);
                if (comma == std::string::npos) comma = key.size();
                tuple.push_back(std::stoi(key.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        }
        c.set(tuple, ratvec_from_json(val));
    }
    return c;
}

Json cochain_to_json(const Cochain& c) {
    Json j;
    j["degree"] = c.degree;
    Json values = Json::object();
    const int N = c.group_order();
    const int d = c.module->dim;
    std::vector<int> tup(c.degree, 0);
    long count = c.tuples();
    for (long t = 0; t < count; ++t) {
        long rem = t;
        for (int i = c.degree - 1; i >= 0; --i) {
            tup[i] = static_cast<int>(rem % N);
            rem /= N;
        }
        RatVec v = c.at(tup);
        bool nonzero = !vec_is_zero(v);
        if (!nonzero) continue;
        std::string key;
        for (int i = 0; i < c.degree; ++i) {
            if (i) key += ',';
            key += std::to_string(tup[i]);
        }
        Json arr = Json::array();
        for (int i = 0; i < d; ++i) arr.push_back(rat_to_string(v[i]));
        values[key] = arr;
    }
    j["values"] = values;
    return j;
}

FpPresentation fp_from_json(const Json& j) {
    if (j.value("type", "fp") != "fp") throw std::invalid_argument("fp spec needs type fp");
    auto gens = j.at("generators").get<std::vector<std::string>>();
    auto rels = j.at("relators").get<std::vector<std::string>>();
    return make_fp_presentation(gens, rels);
}

RatMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j.at(0).size());
    RatMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const auto& row = j.at(r);
        if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("ragged matrix rows");
        for (int c = 0; c < cols; ++c) {
            const auto& e = row.at(c);
            m.at(r, c) = e.is_string() ? rat_from_string(e.get<std::string>()) : Rat(e.get<long>());
        }
    }
    return m;
}

Json matrix_to_json(const RatMatrix& m) {
    Json j = Json::array();
    for (int r = 0; r < m.rows; ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(rat_to_string(m.at(r, c)));
        j.push_back(row);
    }
    return j;
}

RatVec ratvec_from_json(const Json& j) {
    RatVec v;
    for (const auto& e : j)
        v.push_back(e.is_string() ? rat_from_string(e.get<std::string>()) : Rat(e.get<long>()));
    return v;
}

Json ratvec_to_json(const RatVec& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(rat_to_string(x));
    return j;
}

}  // namespace cochainlab
