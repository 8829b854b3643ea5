#include "lrkit/lie_rinehart.hpp"

#include <algorithm>

#include "lrkit/errors.hpp"
#include "lrkit/text.hpp"

namespace lrk {

LElement LElement::zero(std::size_t rank, std::size_t nvars) {
    return LElement{std::vector<Poly>(rank, Poly(nvars))};
}

LElement LElement::basis(std::size_t rank, std::size_t nvars, std::size_t index) {
    LElement u = zero(rank, nvars);
    u.coords.at(index) = Poly::constant(nvars, 1);
    return u;
}

bool LElement::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Poly& p) { return p.is_zero(); });
}

LElement& LElement::operator+=(const LElement& other) {
    if (other.rank() != rank()) throw DimensionMismatch("section rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += other.coords[i];
    return *this;
}

LElement& LElement::operator-=(const LElement& other) {
    if (other.rank() != rank()) throw DimensionMismatch("section rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= other.coords[i];
    return *this;
}

LElement operator*(const Poly& f, LElement u) {
    for (auto& c : u.coords) c = f * c;
    return u;
}

std::string LElement::to_string() const {
    return text::linear_string(coords, 'd');
}

// ---------------------------------------------------------------------------

LieRinehartAlgebra::LieRinehartAlgebra(std::size_t nvars, std::size_t rank)
    : nvars_(nvars),
      rank_(rank),
      brackets_(rank * (rank > 0 ? rank - 1 : 0) / 2, std::vector<Poly>(rank, Poly(nvars))),
      anchors_(rank, Derivation(nvars)) {
    names_.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) names_.push_back("e" + std::to_string(i + 1));
}

void LieRinehartAlgebra::set_basis_names(std::vector<std::string> names) {
    if (names.size() != rank_) throw DimensionMismatch("basis_names length differs from rank");
    names_ = std::move(names);
}

void LieRinehartAlgebra::check_index(std::size_t i) const {
    if (i >= rank_) {
        throw InvalidArgument("basis index " + std::to_string(i + 1) + " out of range for rank " +
                              std::to_string(rank_));
    }
}

std::size_t LieRinehartAlgebra::pair_index(std::size_t i, std::size_t j) const {
    // Offset of row i in the strict upper triangle plus column offset.
    return i * (2 * rank_ - i - 1) / 2 + (j - i - 1);
}

void LieRinehartAlgebra::set_bracket(std::size_t i, std::size_t j, std::vector<Poly> coords) {
    check_index(i);
    check_index(j);
    if (coords.size() != rank_) throw DimensionMismatch("bracket coordinate vector has wrong length");
    for (const auto& c : coords) {
        if (c.nvars() != nvars_) throw DimensionMismatch("bracket coefficient over wrong ring");
    }
    if (i == j) {
        if (std::any_of(coords.begin(), coords.end(), [](const Poly& p) { return !p.is_zero(); })) {
            throw InvalidArgument("[e_i, e_i] must vanish");
        }
        return;
    }
    if (i > j) {
        for (auto& c : coords) c = -c;
        std::swap(i, j);
    }
    brackets_[pair_index(i, j)] = std::move(coords);
}

void LieRinehartAlgebra::set_anchor(std::size_t i, Derivation d) {
    check_index(i);
    if (d.nvars() != nvars_) throw DimensionMismatch("anchor derivation over wrong ring");
    anchors_[i] = std::move(d);
}

LElement LieRinehartAlgebra::structure(std::size_t i, std::size_t j) const {
    check_index(i);
    check_index(j);
    if (i == j) return zero_element();
    if (i < j) return LElement{brackets_[pair_index(i, j)]};
    LElement out{brackets_[pair_index(j, i)]};
    for (auto& c : out.coords) c = -c;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_element(const LieRinehartAlgebra& a, const LElement& u) {
    if (u.rank() != a.rank()) {
        throw DimensionMismatch("element of rank " + std::to_string(u.rank()) +
                                " used with algebroid of rank " + std::to_string(a.rank()));
    }
    for (const auto& c : u.coords) {
        if (c.nvars() != a.nvars()) throw DimensionMismatch("element coefficient over wrong ring");
    }
}

}  // namespace

Derivation anchor_of(const LieRinehartAlgebra& a, const LElement& u) {
    require_element(a, u);
    Derivation d(a.nvars());
    for (std::size_t i = 0; i < u.rank(); ++i) {
        if (u.coords[i].is_zero()) continue;
        d += u.coords[i] * a.anchor(i);
    }
    return d;
}

Poly anchor_apply(const LieRinehartAlgebra& a, const LElement& u, const Poly& f) {
    return anchor_of(a, u).apply(f);
}

LElement bracket(const LieRinehartAlgebra& a, const LElement& u, const LElement& v) {
    require_element(a, u);
    require_element(a, v);
    const Derivation au = anchor_of(a, u);
    const Derivation av = anchor_of(a, v);
    LElement out = a.zero_element();
    for (std::size_t k = 0; k < a.rank(); ++k) {
        out.coords[k] += au.apply(v.coords[k]);
        out.coords[k] -= av.apply(u.coords[k]);
    }
    for (std::size_t i = 0; i < a.rank(); ++i) {
        if (u.coords[i].is_zero()) continue;
        for (std::size_t j = 0; j < a.rank(); ++j) {
            if (i == j || v.coords[j].is_zero()) continue;
            const Poly f = u.coords[i] * v.coords[j];
            const LElement s = a.structure(i, j);
            for (std::size_t k = 0; k < a.rank(); ++k) {
                if (!s.coords[k].is_zero()) out.coords[k] += f * s.coords[k];
            }
        }
    }
    return out;
}

AxiomReport check_axioms(const LieRinehartAlgebra& a) {
    AxiomReport report;
    const std::size_t r = a.rank();
    const std::size_t n = a.nvars();
    auto e = [&](std::size_t i) { return LElement::basis(r, n, i); };
    auto name = [](std::size_t i) { return "d" + std::to_string(i + 1); };

    for (std::size_t i = 0; i < r && report.leibniz_consistent.passed; ++i) {
        for (std::size_t j = 0; j < r && report.leibniz_consistent.passed; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const Poly x = Poly::variable(n, k);
                const LElement lhs = bracket(a, e(i), x * e(j));
                const LElement rhs = x * a.structure(i, j) + a.anchor(i).apply(x) * e(j);
                if (lhs != rhs) {
                    report.leibniz_consistent = {
                        false, "[" + name(i) + ", x" + std::to_string(k + 1) + "*" + name(j) +
                                   "] - (x" + std::to_string(k + 1) + "*[" + name(i) + ", " +
                                   name(j) + "] + a(" + name(i) + ")(x" + std::to_string(k + 1) +
                                   ")*" + name(j) + ") = " + (lhs - rhs).to_string()};
                    break;
                }
            }
        }
    }

    for (std::size_t i = 0; i < r && report.jacobi.passed; ++i) {
        for (std::size_t j = i + 1; j < r && report.jacobi.passed; ++j) {
            for (std::size_t k = j + 1; k < r; ++k) {
                const LElement jac = bracket(a, e(i), a.structure(j, k)) +
                                     bracket(a, e(j), a.structure(k, i)) +
                                     bracket(a, e(k), a.structure(i, j));
                if (!jac.is_zero()) {
                    report.jacobi = {false, "J(" + name(i) + "," + name(j) + "," + name(k) +
                                                ") = " + jac.to_string()};
                    break;
                }
            }
        }
    }

    for (std::size_t i = 0; i < r && report.anchor_morphism.passed; ++i) {
        for (std::size_t j = i + 1; j < r && report.anchor_morphism.passed; ++j) {
            const Derivation lhs = anchor_of(a, a.structure(i, j));
            const Derivation rhs = derivation_bracket(a.anchor(i), a.anchor(j));
            for (std::size_t k = 0; k < n; ++k) {
                const Poly x = Poly::variable(n, k);
                const Poly diff = lhs.apply(x) - rhs.apply(x);
                if (!diff.is_zero()) {
                    const std::string xk = "x" + std::to_string(k + 1);
                    report.anchor_morphism = {false, "a([" + name(i) + "," + name(j) + "])(" + xk +
                                                         ") - [a(" + name(i) + "),a(" + name(j) +
                                                         ")](" + xk + ") = " + diff.to_string()};
                    break;
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

LieRinehartAlgebra tangent_algebroid(std::size_t n) {
    LieRinehartAlgebra a(n, n);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        a.set_anchor(i, Derivation::partial(n, i));
        names.push_back("d/dx" + std::to_string(i + 1));
    }
    a.set_basis_names(std::move(names));
    return a;
}

LieRinehartAlgebra abelian_algebroid(std::size_t rank, std::size_t nvars) {
    return LieRinehartAlgebra(nvars, rank);
}

LieRinehartAlgebra heisenberg_algebra() {
    LieRinehartAlgebra a(0, 3);
    a.set_bracket(0, 1, LElement::basis(3, 0, 2).coords);
    return a;
}

LieRinehartAlgebra sl2_algebra() {
    LieRinehartAlgebra a(0, 3);
    const Poly two = Poly::constant(0, 2);
    a.set_bracket(0, 1, (two * LElement::basis(3, 0, 1)).coords);   // [h,e] = 2e
    a.set_bracket(0, 2, (-two * LElement::basis(3, 0, 2)).coords);  // [h,f] = -2f
    a.set_bracket(1, 2, LElement::basis(3, 0, 0).coords);           // [e,f] = h
    a.set_basis_names({"h", "e", "f"});
    return a;
}

LieRinehartAlgebra cotangent_poisson_algebroid(const std::vector<std::vector<Poly>>& pi) {
    const std::size_t n = pi.size();
    for (const auto& row : pi) {
        if (row.size() != n) throw DimensionMismatch("bivector matrix must be square");
        for (const auto& p : row) {
            if (p.nvars() != n) throw DimensionMismatch("bivector entries must live in Q[x1..xn]");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (pi[i][j] != -pi[j][i]) {
                throw PreconditionError("bivector is not antisymmetric at (" + std::to_string(i + 1) +
                                        "," + std::to_string(j + 1) + ")");
            }
        }
    }
    LieRinehartAlgebra a(n, n);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        a.set_anchor(i, Derivation(pi[i]));
        names.push_back("dx" + std::to_string(i + 1));
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Poly> coords;
            for (std::size_t k = 0; k < n; ++k) coords.push_back(pi[i][j].partial(k));
            a.set_bracket(i, j, std::move(coords));
        }
    }
    a.set_basis_names(std::move(names));
    return a;
}

std::vector<std::vector<Poly>> so3_bivector() {
    std::vector<std::vector<Poly>> pi(3, std::vector<Poly>(3, Poly(3)));
    auto x = [](std::size_t i) { return Poly::variable(3, i); };
    pi[0][1] = x(2);
    pi[0][2] = -x(1);
    pi[1][2] = x(0);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) pi[j][i] = -pi[i][j];
    }
    return pi;
}

LieRinehartAlgebra atiyah_algebroid(std::size_t m, std::size_t n) {
    if (m == 0) throw InvalidArgument("Atiyah algebroid needs bundle rank m >= 1");
    const std::size_t r = m * m + n;
    LieRinehartAlgebra a(n, r);
    auto unit = [m](std::size_t p, std::size_t q) { return p * m + q; };
    std::vector<std::string> names;
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
            names.push_back("E" + std::to_string(p + 1) + std::to_string(q + 1));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        a.set_anchor(m * m + i, Derivation::partial(n, i));
        names.push_back("d/dx" + std::to_string(i + 1));
    }
    // [E_pq, E_st] = delta_qs E_pt - delta_tp E_sq
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
            for (std::size_t s = 0; s < m; ++s) {
                for (std::size_t t = 0; t < m; ++t) {
                    const std::size_t lhs = unit(p, q);
                    const std::size_t rhs = unit(s, t);
                    if (lhs >= rhs) continue;
                    LElement c = LElement::zero(r, n);
                    if (q == s) c.coords[unit(p, t)] += Poly::constant(n, 1);
                    if (t == p) c.coords[unit(s, q)] -= Poly::constant(n, 1);
                    a.set_bracket(lhs, rhs, std::move(c.coords));
                }
            }
        }
    }
    a.set_basis_names(std::move(names));
    return a;
}

bool log_derivation_member(const Poly& f, const Derivation& d) {
    if (f.is_zero()) throw InvalidArgument("logarithmic membership needs a nonzero generator f");
    return d.apply(f).divide_exact(f).has_value();
}

}  // namespace lrk
