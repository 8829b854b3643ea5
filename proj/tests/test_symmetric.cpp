#include <doctest.h>

#include "lrkit/errors.hpp"
#include "lrkit/symmetric.hpp"

using namespace lrk;

namespace {

/// S_O L as a polynomial ring in x1..xn, s1..sr.
Poly flatten(const SymElement& s) {
    const std::size_t n = s.nvars();
    Poly out(n + s.rank());
    for (const auto& [beta, f] : s.terms()) {
        for (const auto& [e, c] : f.terms()) {
            Exponent full(e);
            full.insert(full.end(), beta.begin(), beta.end());
            out.add_term(full, c);
        }
    }
    return out;
}

Poly lift(const Poly& f, std::size_t extra) {
    Poly out(f.nvars() + extra);
    for (const auto& [e, c] : f.terms()) {
        Exponent full(e);
        full.resize(e.size() + extra, 0);
        out.add_term(full, c);
    }
    return out;
}

/// Coordinate formula for the bracket on the flattened ring:
///   sum_ij [e_i, e_j] dF/ds_i dG/ds_j + sum_ik a_i^k (dF/ds_i dG/dx_k - dF/dx_k dG/ds_i).
Poly oracle_bracket(const LieRinehartAlgebra& a, const Poly& F, const Poly& G) {
    const std::size_t n = a.nvars();
    const std::size_t r = a.rank();
    Poly out(n + r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            const LElement c = a.structure(i, j);
            Poly pij(n + r);
            for (std::size_t k = 0; k < r; ++k) pij += lift(c.coords[k], r) * Poly::variable(n + r, n + k);
            out += pij * F.partial(n + i) * G.partial(n + j);
        }
        for (std::size_t k = 0; k < n; ++k) {
            const Poly aik = lift(a.anchor(i).coeff(k), r);
            out += aik * (F.partial(n + i) * G.partial(k) - F.partial(k) * G.partial(n + i));
        }
    }
    return out;
}

std::vector<LieRinehartAlgebra> builtins() {
    return {tangent_algebroid(1), tangent_algebroid(2), tangent_algebroid(3), heisenberg_algebra(),
            sl2_algebra(), abelian_algebroid(2), cotangent_poisson_algebroid(so3_bivector()),
            atiyah_algebroid(1, 1), atiyah_algebroid(2, 1)};
}

SymElement S(const char* text, const LieRinehartAlgebra& a) { return parse_symelement(text, a.rank(), a.nvars()); }

}  // namespace

TEST_CASE("bracket examples") {
    const auto t1 = tangent_algebroid(1);
    CHECK(poisson_bracket(t1, S("s1", t1), S("x1", t1)) == S("1", t1));
    CHECK(poisson_bracket(t1, S("x1*s1", t1), S("s1", t1)) == S("-s1", t1));
    CHECK(poisson_bracket(t1, S("x1", t1), S("x1^2", t1)).is_zero());
    CHECK(poisson_bracket(t1, S("s1^2", t1), S("x1^2", t1)) == S("4*x1*s1", t1));

    const auto so3 = cotangent_poisson_algebroid(so3_bivector());
    CHECK(poisson_bracket(so3, S("s1", so3), S("s2", so3)) == S("s3", so3));
    CHECK(poisson_bracket(so3, S("s1", so3), S("x2", so3)) == S("x3", so3));

    const auto h = heisenberg_algebra();
    CHECK(poisson_bracket(h, S("s1", h), S("s2", h)) == S("s3", h));
    CHECK(poisson_bracket(h, S("s1^2", h), S("s2", h)) == S("2 s1 s3", h));
}

TEST_CASE("coordinate brackets on the tangent algebroid") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto t = tangent_algebroid(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const SymElement xi = SymElement::generator(n, n, i);
                const SymElement xj = SymElement::scalar(n, Poly::variable(n, j));
                const SymElement expected = i == j ? SymElement::one(n, n) : SymElement(n, n);
                CHECK(poisson_bracket(t, xi, xj) == expected);
                CHECK(poisson_bracket(t, xj, xi) == -expected);
                CHECK(poisson_bracket(t, xi, SymElement::generator(n, n, j)).is_zero());
            }
        }
    }
}

TEST_CASE("bracket agrees with the coordinate formula") {
    Rng rng(71);
    for (const auto& a : builtins()) {
        for (int t = 0; t < 40; ++t) {
            const SymElement u = random_symelement(rng, a.rank(), a.nvars(), 3);
            const SymElement v = random_symelement(rng, a.rank(), a.nvars(), 3);
            CHECK(flatten(poisson_bracket(a, u, v)) == oracle_bracket(a, flatten(u), flatten(v)));
        }
    }
}

TEST_CASE("product is commutative and matches the flattened product") {
    Rng rng(73);
    for (int t = 0; t < 200; ++t) {
        const SymElement u = random_symelement(rng, 2, 2, 3);
        const SymElement v = random_symelement(rng, 2, 2, 3);
        CHECK(sym_mul(u, v) == sym_mul(v, u));
        CHECK(flatten(sym_mul(u, v)) == flatten(u) * flatten(v));
    }
}

TEST_CASE("biderivation and Jacobi on random triples") {
    Rng rng(79);
    for (const auto& a : builtins()) {
        for (int t = 0; t < 25; ++t) {
            const std::size_t r = a.rank();
            const std::size_t n = a.nvars();
            const SymElement u = random_symelement(rng, r, n, 2);
            const SymElement v = random_symelement(rng, r, n, 2);
            const SymElement w = random_symelement(rng, r, n, 2);
            CHECK(poisson_bracket(a, u, sym_mul(v, w)) ==
                  sym_mul(poisson_bracket(a, u, v), w) + sym_mul(v, poisson_bracket(a, u, w)));
            CHECK(poisson_bracket(a, u, v) == -poisson_bracket(a, v, u));
            const SymElement jac = poisson_bracket(a, u, poisson_bracket(a, v, w)) +
                                   poisson_bracket(a, v, poisson_bracket(a, w, u)) +
                                   poisson_bracket(a, w, poisson_bracket(a, u, v));
            CHECK(jac.is_zero());
        }
    }
}

TEST_CASE("axiom check passes for builtins") {
    for (const auto& a : builtins()) {
        const PoissonReport r = check_poisson_axioms(a, 200, 5);
        CHECK(r.passed);
        CHECK(r.trials >= 200);
        CHECK(r.witness.empty());
    }
}

TEST_CASE("axiom check fails for a perturbed algebroid") {
    LieRinehartAlgebra a = tangent_algebroid(2);
    a.set_bracket(0, 1, {Poly::constant(2, 1), Poly(2)});
    const PoissonReport r = check_poisson_axioms(a, 50, 5);
    CHECK_FALSE(r.passed);
    CHECK(r.witness.find("cyclic") != std::string::npos);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_symelement("s3", 2, 2), ParseError);
    CHECK_THROWS_AS(parse_symelement("d1", 2, 2), ParseError);
    CHECK(parse_symelement("s2 s1", 2, 2) == parse_symelement("s1 s2", 2, 2));
}
