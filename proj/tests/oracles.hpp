#pragma once

// Reference computations for tests.  They only read term maps and use
// Poly::partial / Poly arithmetic as black boxes; none of them touch the
// straightening, cochain or linear-algebra code of the library.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lrkit/lie_rinehart.hpp"
#include "lrkit/poly.hpp"

namespace oracle {

using lrk::Poly;
using lrk::Rational;

/// Evaluate term by term at a rational point.
inline Rational eval(const Poly& p, const std::vector<Rational>& pt) {
    Rational sum = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= pt[i];
        }
        sum += t;
    }
    return sum;
}

/// One atom of an operator word: a multiplication by f or d/dx_i.
struct OpAtom {
    bool is_partial;
    std::size_t index;
    Poly f;
};

inline OpAtom mul_by(Poly f) { return {false, 0, std::move(f)}; }
inline OpAtom partial(std::size_t i) { return {true, i, Poly()}; }

/// Apply the word (written left to right) to g, innermost atom last.
inline Poly act(const std::vector<OpAtom>& word, Poly g) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) g = it->is_partial ? g.partial(it->index) : it->f * g;
    return g;
}

/// Sum_alpha f_alpha * d^alpha g for a term map keyed by d-exponents.
template <class TermMap>
Poly act_normal(const TermMap& terms, const Poly& g) {
    Poly out(g.nvars());
    for (const auto& [alpha, f] : terms) {
        Poly h = g;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            for (std::uint32_t k = 0; k < alpha[i]; ++k) h = h.partial(i);
        }
        out += f * h;
    }
    return out;
}

/// {pi_ij, pi_kl}-Jacobiator sum_l pi_il d_l pi_jk + cyclic, on coordinates.
inline Poly bivector_jacobiator(const std::vector<std::vector<Poly>>& pi, std::size_t i, std::size_t j,
                                std::size_t k) {
    const std::size_t n = pi.size();
    Poly out(n);
    const std::size_t idx[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
    for (const auto& t : idx) {
        for (std::size_t l = 0; l < n; ++l) out += pi[t[0]][l] * pi[t[1]][t[2]].partial(l);
    }
    return out;
}

/// Rank by fraction-free (Bareiss) elimination on an integer matrix.
inline std::size_t integer_rank(std::vector<std::vector<mpz_class>> m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                m[i][k] = (m[r][c] * m[i][k] - m[i][c] * m[r][k]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

/// Increasing k-subsets of {0..r-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t r, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> pick(r, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(std::min(k, r)), true);
    if (k > r) return out;
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < r; ++i) {
            if (pick[i]) s.push_back(i);
        }
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end());
    return out;
}

/// Value of the basis form e^I on the tuple t: the sign sorting t into I, or 0.
inline int basis_form(const std::vector<std::size_t>& form, std::vector<std::size_t> t) {
    int sign = 1;
    for (std::size_t a = 0; a < t.size(); ++a) {
        for (std::size_t b = a + 1; b < t.size(); ++b) {
            if (t[a] == t[b]) return 0;
            if (t[a] > t[b]) sign = -sign;
        }
    }
    std::sort(t.begin(), t.end());
    return t == form ? sign : 0;
}

/// Matrix of d: C^k -> C^{k+1} of a Lie algebra (no variables) with
/// trivial coefficients, written straight from the structure constants.
/// Entries are scaled to integers by the common denominator.
inline std::vector<std::vector<mpz_class>> ce_matrix(const lrk::LieRinehartAlgebra& g, std::size_t k) {
    const std::size_t r = g.rank();
    const auto src = subsets(r, k);
    const auto dst = subsets(r, k + 1);
    std::vector<std::vector<Rational>> q(dst.size(), std::vector<Rational>(src.size(), 0));
    for (std::size_t row = 0; row < dst.size(); ++row) {
        const auto& t = dst[row];
        for (std::size_t col = 0; col < src.size(); ++col) {
            Rational v = 0;
            for (std::size_t p = 0; p < t.size(); ++p) {
                for (std::size_t s = p + 1; s < t.size(); ++s) {
                    const auto br = g.structure(t[p], t[s]);
                    for (std::size_t m = 0; m < r; ++m) {
                        const Rational c = br.coords[m].constant_term();
                        if (c == 0) continue;
                        std::vector<std::size_t> args{m};
                        for (std::size_t u = 0; u < t.size(); ++u) {
                            if (u != p && u != s) args.push_back(t[u]);
                        }
                        const int sign = ((p + s) % 2 == 0) ? 1 : -1;
                        v += sign * c * basis_form(src[col], args);
                    }
                }
            }
            q[row][col] = v;
        }
    }
    mpz_class den = 1;
    for (const auto& row : q) {
        for (const auto& v : row) den = lcm(den, v.get_den());
    }
    std::vector<std::vector<mpz_class>> out(q.size(), std::vector<mpz_class>(src.size()));
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = 0; j < src.size(); ++j) {
            const Rational scaled = q[i][j] * den;
            out[i][j] = scaled.get_num();
        }
    }
    return out;
}

/// dim H^k = dim C^k - rank d_k - rank d_{k-1}.
inline std::size_t cohomology_dim(const lrk::LieRinehartAlgebra& g, std::size_t k) {
    const std::size_t r = g.rank();
    const std::size_t ck = subsets(r, k).size();
    const std::size_t rank_out = k + 1 <= r ? integer_rank(ce_matrix(g, k)) : 0;
    const std::size_t rank_in = k >= 1 ? integer_rank(ce_matrix(g, k - 1)) : 0;
    return ck - rank_out - rank_in;
}

}  // namespace oracle
