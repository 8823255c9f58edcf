#include "cochainlab/fpgroup.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace cochainlab {

std::vector<int> free_reduce(std::vector<int> word) {
    std::vector<int> out;
    for (int l : word) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

std::vector<int> parse_word(const FpPresentation& P, const std::string& word) {
    std::vector<int> out;
    for (char ch : word) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        bool inverse = std::isupper(static_cast<unsigned char>(ch)) != 0;
        std::string sym(1, static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        auto it = std::find(P.generators.begin(), P.generators.end(), sym);
        if (it == P.generators.end()) throw std::invalid_argument("unknown generator letter: " + sym);
        int idx = static_cast<int>(it - P.generators.begin()) + 1;
        out.push_back(inverse ? -idx : idx);
    }
    return free_reduce(out);
}

FpPresentation make_fp_presentation(const std::vector<std::string>& generators,
                                    const std::vector<std::string>& relator_words) {
    FpPresentation P;
    std::set<std::string> seen;
    for (const auto& g : generators) {
        if (g.size() != 1 || !std::islower(static_cast<unsigned char>(g[0])))
            throw std::invalid_argument("generator symbols must be single lowercase letters");
        if (!seen.insert(g).second) throw std::invalid_argument("duplicate generator symbol");
    }
    P.generators = generators;
    for (const auto& w : relator_words) {
        auto word = parse_word(P, w);
        if (word.empty()) throw std::invalid_argument("relator reduces to the empty word");
        P.relators.push_back(std::move(word));
    }
    return P;
}

namespace {

bool is_signed_permutation_mat(const RatMatrix& A) {
    if (A.rows != A.cols) return false;
    std::vector<int> col_hits(A.cols, 0);
    for (int r = 0; r < A.rows; ++r) {
        int hits = 0;
        for (int c = 0; c < A.cols; ++c) {
            const Rat& v = A.at(r, c);
            if (v == 0) continue;
            if (v != 1 && v != -1) return false;
            ++hits;
            ++col_hits[c];
        }
        if (hits != 1) return false;
    }
    for (int c : col_hits)
        if (c != 1) return false;
    return true;
}

}  // namespace

FpModule build_fp_module(const FpPresentation& P, std::vector<RatMatrix> generator_matrices,
                         const PNorm& p) {
    if (generator_matrices.size() != P.generators.size())
        throw std::invalid_argument("one matrix per generator required");
    FpModule M;
    M.p = p;
    M.dim = generator_matrices.empty() ? 0 : generator_matrices[0].rows;
    for (const auto& A : generator_matrices) {
        if (A.rows != M.dim || A.cols != M.dim) throw std::invalid_argument("matrix shape mismatch");
        if (p.is_two()) {
            if (!(A.transpose() * A == RatMatrix::identity(M.dim)))
                throw std::invalid_argument("generator matrix is not an isometry for p = 2");
        } else if (!is_signed_permutation_mat(A)) {
            throw std::invalid_argument("generator matrix is not an isometry for p != 2");
        }
        M.gen_inverses.push_back(rat_inverse(A));
    }
    M.gen_mats = std::move(generator_matrices);
    for (const auto& r : P.relators) {
        if (!fp_word_matrix(M, r).is_identity())
            throw std::invalid_argument("relator product is not the identity matrix");
    }
    return M;
}

RatMatrix fp_word_matrix(const FpModule& M, const std::vector<int>& word) {
    RatMatrix A = RatMatrix::identity(M.dim);
    for (int l : word) {
        int idx = std::abs(l) - 1;
        if (idx < 0 || idx >= static_cast<int>(M.gen_mats.size()))
            throw std::invalid_argument("letter outside generator range");
        A = A * (l > 0 ? M.gen_mats[idx] : M.gen_inverses[idx]);
    }
    return A;
}

RatMatrix word_evaluation_matrix(const FpPresentation& P, const FpModule& M,
                                 const std::vector<int>& word) {
    const int k = static_cast<int>(P.generators.size());
    const int d = M.dim;
    RatMatrix E(d, k * d);
    RatMatrix prefix = RatMatrix::identity(d);
    for (int l : word) {
        int idx = std::abs(l) - 1;
        // φ(s_i) contributes the prefix on block i; φ(s⁻¹) = −π(s)⁻¹φ(s)
        RatMatrix contrib = l > 0 ? prefix : RatMatrix(Rat(-1) * (prefix * M.gen_inverses[idx]));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) E.at(r, idx * d + c) += contrib.at(r, c);
        prefix = prefix * (l > 0 ? M.gen_mats[idx] : M.gen_inverses[idx]);
    }
    return E;
}

FpCocycleSpace fp_cocycle_space(const FpPresentation& P, const FpModule& M) {
    const int k = static_cast<int>(P.generators.size());
    const int d = M.dim;
    FpCocycleSpace out;
    RatMatrix sys(static_cast<int>(P.relators.size()) * d, k * d);
    int row = 0;
    for (const auto& r : P.relators) {
        RatMatrix E = word_evaluation_matrix(P, M, r);
        for (int i = 0; i < d; ++i, ++row)
            for (int c = 0; c < k * d; ++c) sys.at(row, c) = E.at(i, c);
    }
    out.basis_Z = sys.rows == 0 ? RatMatrix::identity(k * d) : kernel_basis(sys);
    out.dim_Z = out.basis_Z.cols;
    // B¹: image of x ↦ ((I − π(s_i))x)_i
    RatMatrix cob(k * d, d);
    for (int i = 0; i < k; ++i) {
        RatMatrix blk = RatMatrix::identity(d) - M.gen_mats[i];
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) cob.at(i * d + r, c) = blk.at(r, c);
    }
    out.basis_B = column_space_basis(cob);
    out.dim_B = out.basis_B.cols;
    out.dim_H = out.dim_Z - out.dim_B;
    // coboundaries must evaluate to zero on every relator
    for (int c = 0; c < out.basis_B.cols; ++c)
        if (sys.rows > 0 && !vec_is_zero(sys.apply(out.basis_B.col(c))))
            throw std::logic_error("coboundary violates a relator equation");
    return out;
}

IntMatrix relator_exponent_matrix(const FpPresentation& P) {
    IntMatrix m(P.relators.size(), std::vector<Int>(P.generators.size(), Int(0)));
    for (std::size_t r = 0; r < P.relators.size(); ++r)
        for (int l : P.relators[r]) m[r][std::abs(l) - 1] += (l > 0 ? 1 : -1);
    return m;
}

std::vector<Int> smith_diagonal(IntMatrix m) {
    std::vector<Int> diag;
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::size_t top = 0;
    while (top < rows && top < cols) {
        std::size_t pi = top, pj = top;
        bool found = false;
        for (std::size_t i = top; i < rows; ++i)
            for (std::size_t j = top; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                if (!found || cmp(abs(m[i][j]), abs(m[pi][pj])) < 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        std::swap(m[top], m[pi]);
        for (auto& row : m) std::swap(row[top], row[pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = top + 1; i < rows; ++i) {
                if (m[i][top] == 0) continue;
                Int q = m[i][top] / m[top][top];
                for (std::size_t j = top; j < cols; ++j) m[i][j] -= q * m[top][j];
                if (m[i][top] != 0) {
                    std::swap(m[top], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = top + 1; j < cols; ++j) {
                if (m[top][j] == 0) continue;
                Int q = m[top][j] / m[top][top];
                for (std::size_t i = top; i < rows; ++i) m[i][j] -= q * m[i][top];
                if (m[top][j] != 0) {
                    for (std::size_t i = top; i < rows; ++i) std::swap(m[i][top], m[i][j]);
                    clean = false;
                }
            }
        }
        diag.push_back(abs(m[top][top]));
        ++top;
    }
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[j] % diag[i] == 0) continue;
            Int g, l;
            mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
            mpz_lcm(l.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

int abelianization_free_rank(const FpPresentation& P) {
    auto diag = smith_diagonal(relator_exponent_matrix(P));
    int nonzero = 0;
    for (const auto& d : diag)
        if (d != 0) ++nonzero;
    return static_cast<int>(P.generators.size()) - nonzero;
}

}  // namespace cochainlab
