#include "lrkit/symmetric.hpp"

#include "lrkit/errors.hpp"
#include "lrkit/text.hpp"

namespace lrk {

namespace {

void require_same(const LieRinehartAlgebra& a, const SymElement& s) {
    if (s.rank() != a.rank() || s.nvars() != a.nvars()) {
        throw DimensionMismatch("symbol does not belong to this algebroid");
    }
}

SymElement monomial_product(const MultiIndex& b1, const Poly& f1, const MultiIndex& b2, const Poly& f2) {
    MultiIndex beta(b1.size());
    for (std::size_t i = 0; i < beta.size(); ++i) beta[i] = b1[i] + b2[i];
    return SymElement::monomial(std::move(beta), f1 * f2);
}

}  // namespace

SymElement sym_mul(const SymElement& s1, const SymElement& s2) {
    s1.require_compatible(s2);
    SymElement out(s1.rank(), s1.nvars());
    for (const auto& [b1, f1] : s1.terms()) {
        for (const auto& [b2, f2] : s2.terms()) out += monomial_product(b1, f1, b2, f2);
    }
    return out;
}

SymElement poisson_bracket(const LieRinehartAlgebra& a, const SymElement& s1, const SymElement& s2) {
    require_same(a, s1);
    require_same(a, s2);
    const std::size_t r = a.rank();
    const std::size_t n = a.nvars();
    SymElement out(r, n);
    // {f P, g Q} = f {P, g} Q - g {Q, f} P + f g {P, Q}
    for (const auto& [b, f] : s1.terms()) {
        for (const auto& [c, g] : s2.terms()) {
            for (std::size_t i = 0; i < r; ++i) {
                if (b[i] == 0) continue;
                MultiIndex rest = b;
                rest[i] -= 1;
                const Poly coeff = Rational(b[i]) * a.anchor(i).apply(g);
                if (!coeff.is_zero()) out += monomial_product(rest, f * coeff, c, Poly::constant(n, 1));
            }
            for (std::size_t j = 0; j < r; ++j) {
                if (c[j] == 0) continue;
                MultiIndex rest = c;
                rest[j] -= 1;
                const Poly coeff = Rational(c[j]) * a.anchor(j).apply(f);
                if (!coeff.is_zero()) out -= monomial_product(rest, g * coeff, b, Poly::constant(n, 1));
            }
            const Poly fg = f * g;
            for (std::size_t i = 0; i < r; ++i) {
                if (b[i] == 0) continue;
                for (std::size_t j = 0; j < r; ++j) {
                    if (c[j] == 0 || i == j) continue;
                    MultiIndex rest(r);
                    for (std::size_t k = 0; k < r; ++k) rest[k] = b[k] + c[k];
                    rest[i] -= 1;
                    rest[j] -= 1;
                    const Poly mult = Rational(b[i] * c[j]) * fg;
                    const LElement s = a.structure(i, j);
                    for (std::size_t k = 0; k < r; ++k) {
                        if (s.coords[k].is_zero()) continue;
                        MultiIndex beta = rest;
                        beta[k] += 1;
                        out.add_term(beta, mult * s.coords[k]);
                    }
                }
            }
        }
    }
    return out;
}

SymElement parse_symelement(std::string_view text, std::size_t rank, std::size_t nvars) {
    const text::Expr expr = text::parse_expression(text, 's');
    SymElement out(rank, nvars);
    for (const auto& term : expr.terms) {
        Poly coeff = Poly::constant(nvars, term.negative ? -1 : 1);
        MultiIndex beta(rank, 0);
        for (const auto& f : term.factors) {
            if (f.kind == text::Factor::Kind::Gen) {
                if (f.index >= rank) {
                    throw ParseError("symbol s" + std::to_string(f.index + 1) + " out of range for rank " +
                                     std::to_string(rank));
                }
                beta[f.index] += f.power;
            } else {
                text::Expr single;
                single.terms.push_back(text::Term{false, {f}});
                coeff *= text::to_poly(single, nvars);
            }
        }
        out.add_term(beta, coeff);
    }
    return out;
}

SymElement random_symelement(Rng& rng, std::size_t rank, std::size_t nvars, unsigned max_degree,
                             unsigned max_terms) {
    SymElement s(rank, nvars);
    const long nterms = rng.uniform(1, static_cast<long>(max_terms));
    for (long t = 0; t < nterms; ++t) {
        const unsigned deg = rank == 0 ? 0 : static_cast<unsigned>(rng.uniform(0, max_degree));
        s.add_term(rng.multi_index(rank, deg), rng.poly(nvars, 2, 2));
    }
    if (s.is_zero()) s = SymElement::one(rank, nvars);
    return s;
}

PoissonReport check_poisson_axioms(const LieRinehartAlgebra& a, std::size_t trials, std::uint64_t seed) {
    PoissonReport report;
    const std::size_t r = a.rank();
    const std::size_t n = a.nvars();
    auto pb = [&a](const SymElement& x, const SymElement& y) { return poisson_bracket(a, x, y); };

    auto check = [&](const SymElement& x, const SymElement& y, const SymElement& z) {
        ++report.trials;
        const auto triple = "a = " + x.to_string() + ", b = " + y.to_string() + ", c = " + z.to_string();
        const SymElement anti = pb(x, y) + pb(y, x);
        if (!anti.is_zero()) {
            report = {false, report.trials, "{a,b} + {b,a} = " + anti.to_string() + " for " + triple};
            return false;
        }
        const SymElement leib = pb(x, sym_mul(y, z)) - sym_mul(pb(x, y), z) - sym_mul(y, pb(x, z));
        if (!leib.is_zero()) {
            report = {false, report.trials, "{a,bc} - {a,b}c - b{a,c} = " + leib.to_string() + " for " + triple};
            return false;
        }
        const SymElement jac = pb(x, pb(y, z)) + pb(y, pb(z, x)) + pb(z, pb(x, y));
        if (!jac.is_zero()) {
            report = {false, report.trials, "{a,{b,c}} + cyclic = " + jac.to_string() + " for " + triple};
            return false;
        }
        return true;
    };

    std::vector<SymElement> atoms;
    for (std::size_t i = 0; i < r; ++i) atoms.push_back(SymElement::generator(r, n, i));
    for (std::size_t k = 0; k < n; ++k) atoms.push_back(SymElement::scalar(r, Poly::variable(n, k)));
    for (const auto& x : atoms) {
        for (const auto& y : atoms) {
            for (const auto& z : atoms) {
                if (!check(x, y, z)) return report;
            }
        }
    }
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const SymElement x = random_symelement(rng, r, n, 3);
        const SymElement y = random_symelement(rng, r, n, 3);
        const SymElement z = random_symelement(rng, r, n, 3);
        if (!check(x, y, z)) return report;
    }
    return report;
}

}  // namespace lrk
