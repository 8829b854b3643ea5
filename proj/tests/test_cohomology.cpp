#include <doctest.h>

#include "lrkit/cohomology.hpp"
#include "lrkit/errors.hpp"
#include "lrkit/random.hpp"
#include "oracles.hpp"

using namespace lrk;

namespace {

Poly P(const char* s, std::size_t n) { return Poly::parse(s, n); }

Cochain random_cochain(Rng& rng, const LieRinehartAlgebra& a, std::size_t k, std::size_t m = 1) {
    Cochain c(k, a.rank(), a.nvars(), m);
    for (const auto& idx : oracle::subsets(a.rank(), k)) {
        std::vector<Poly> v;
        for (std::size_t i = 0; i < m; ++i) v.push_back(rng.poly(a.nvars(), 2, 2, true));
        c.set(idx, v);
    }
    return c;
}

Connection random_connection(Rng& rng, const LieRinehartAlgebra& a, std::size_t m) {
    Connection conn = Connection::trivial(a, m);
    for (auto& mat : conn.matrices) {
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) mat.at(r, c) = rng.poly(a.nvars(), 1, 2, true);
        }
    }
    return conn;
}

/// A_i = a(e_i)(g): gauge-trivial and flat on any rank-1 bundle.
Connection gauge_connection(const LieRinehartAlgebra& a, const Poly& g) {
    Connection conn = Connection::trivial(a, 1);
    for (std::size_t i = 0; i < a.rank(); ++i) conn.matrices[i].at(0, 0) = a.anchor(i).apply(g);
    return conn;
}

Cochain sympl(const LieRinehartAlgebra& a) {
    Cochain w(2, a.rank(), a.nvars());
    w.set({0, 1}, Poly::constant(a.nvars(), 1));
    return w;
}

Connection conn_a() {
    Connection conn = Connection::trivial(tangent_algebroid(2));
    conn.matrices[0].at(0, 0) = P("-x2", 2);
    return conn;
}

std::vector<LieRinehartAlgebra> lie_algebras() {
    LieRinehartAlgebra solvable(0, 2);
    solvable.set_bracket(0, 1, {Poly(0), Poly::constant(0, 1)});
    return {heisenberg_algebra(), sl2_algebra(), abelian_algebroid(2), abelian_algebroid(3), solvable};
}

}  // namespace

TEST_CASE("differential of functions and 1-cochains") {
    const auto t2 = tangent_algebroid(2);
    Cochain f(0, 2, 2);
    f.set({}, P("x1^2*x2", 2));
    const Cochain df = ce_differential(t2, f);
    CHECK(df.scalar_value(std::vector<std::size_t>{0}) == P("2*x1*x2", 2));
    CHECK(df.scalar_value(std::vector<std::size_t>{1}) == P("x1^2", 2));

    Cochain rho(1, 2, 2);
    rho.set({0}, P("-x2", 2));
    const Cochain drho = ce_differential(t2, rho);
    CHECK(drho == sympl(t2));
    CHECK(drho.to_string() == "w(d1,d2) = 1");

    const auto h = heisenberg_algebra();
    Cochain r3(1, 3, 0);
    r3.set({2}, Poly::constant(0, 1));
    CHECK(ce_differential(h, r3).scalar_value(std::vector<std::size_t>{0, 1}) == Poly::constant(0, -1));
}

TEST_CASE("cochain evaluation is alternating") {
    Cochain c(2, 3, 1);
    c.set({2, 0}, P("x1", 1));
    CHECK(c.scalar_value(std::vector<std::size_t>{0, 2}) == P("-x1", 1));
    CHECK(c.scalar_value(std::vector<std::size_t>{2, 0}) == P("x1", 1));
    CHECK(c.scalar_value(std::vector<std::size_t>{1, 1}).is_zero());
    CHECK_THROWS_AS(Cochain(4, 3, 1), InvalidArgument);
}

TEST_CASE("d squares to zero") {
    Rng rng(83);
    const std::vector<LieRinehartAlgebra> algebras{tangent_algebroid(2), tangent_algebroid(3), heisenberg_algebra(),
                                                   sl2_algebra(), cotangent_poisson_algebroid(so3_bivector()),
                                                   atiyah_algebroid(1, 1)};
    int trials = 0;
    for (const auto& a : algebras) {
        for (std::size_t k = 0; k + 2 <= a.rank(); ++k) {
            for (int t = 0; t < 25; ++t) {
                const Cochain c = random_cochain(rng, a, k);
                CHECK(ce_differential(a, ce_differential(a, c)).is_zero());
                const Connection flat = gauge_connection(a, rng.poly(a.nvars(), 2, 2));
                CHECK(ce_differential(a, flat, ce_differential(a, flat, c)).is_zero());
                ++trials;
            }
        }
    }
    CHECK(trials >= 200);
}

TEST_CASE("d squared is multiplication by curvature") {
    Rng rng(89);
    const auto t2 = tangent_algebroid(2);
    const Connection conn = conn_a();
    for (int t = 0; t < 30; ++t) {
        Cochain f(0, 2, 2);
        const Poly g = rng.poly(2, 3, 3);
        f.set({}, g);
        const Cochain dd = ce_differential(t2, conn, ce_differential(t2, conn, f));
        CHECK(dd.scalar_value(std::vector<std::size_t>{0, 1}) == g);
    }
}

TEST_CASE("Lie algebra cohomology matches the brute-force complex") {
    for (const auto& g : lie_algebras()) {
        for (std::size_t k = 0; k <= g.rank(); ++k) CHECK(lie_algebra_cohomology_dim(g, k) == oracle::cohomology_dim(g, k));
    }
    const auto h = heisenberg_algebra();
    CHECK(lie_algebra_cohomology_dim(h, 1) == 2);
    CHECK(lie_algebra_cohomology_dim(h, 2) == 2);
    const auto s = sl2_algebra();
    CHECK(lie_algebra_cohomology_dim(s, 1) == 0);
    CHECK(lie_algebra_cohomology_dim(s, 2) == 0);
    CHECK(lie_algebra_cohomology_dim(s, 3) == 1);
    CHECK(lie_algebra_cohomology_dim(abelian_algebroid(2), 2) == 1);
    CHECK_THROWS_AS(lie_algebra_cohomology_dim(tangent_algebroid(1), 1), InvalidArgument);
}

TEST_CASE("cocycle predicate") {
    const auto t2 = tangent_algebroid(2);
    CHECK(is_cocycle(t2, sympl(t2)));
    CHECK(is_cocycle(heisenberg_algebra(), sympl(heisenberg_algebra())));
    Cochain bad(2, 3, 3);
    bad.set({0, 1}, P("x3", 3));
    CHECK_FALSE(is_cocycle(tangent_algebroid(3), bad));
    Cochain top(3, 3, 3);
    top.set({0, 1, 2}, P("x1", 3));
    CHECK(is_cocycle(tangent_algebroid(3), top));
}

TEST_CASE("coboundary solve") {
    const auto t2 = tangent_algebroid(2);
    const Cochain zero(2, 2, 2);
    const auto rho = coboundary_solve(t2, zero, sympl(t2), 1);
    REQUIRE(rho.has_value());
    CHECK(ce_differential(t2, *rho) == sympl(t2));

    const auto back = coboundary_solve(t2, sympl(t2), zero);
    REQUIRE(back.has_value());
    CHECK(ce_differential(t2, *back) == zero - sympl(t2));

    const auto ab = abelian_algebroid(2);
    for (int bound = 0; bound <= 5; ++bound) CHECK_FALSE(coboundary_solve(ab, Cochain(2, 2, 0), sympl(ab), bound));

    Rng rng(97);
    for (int t = 0; t < 20; ++t) {
        const Cochain r = random_cochain(rng, t2, 1);
        const Cochain w1 = ce_differential(t2, random_cochain(rng, t2, 1));
        const Cochain w2 = w1 + ce_differential(t2, r);
        const auto found = coboundary_solve(t2, w1, w2);
        REQUIRE(found.has_value());
        CHECK(ce_differential(t2, *found) == w2 - w1);
    }

    Cochain bad(2, 3, 3);
    bad.set({0, 1}, P("x3", 3));
    CHECK_THROWS_AS(coboundary_solve(tangent_algebroid(3), Cochain(2, 3, 3), bad), PreconditionError);
}

TEST_CASE("curvature examples") {
    const auto t2 = tangent_algebroid(2);
    const CurvatureTensor r = curvature(t2, conn_a());
    REQUIRE(r.size() == 1);
    CHECK(r.at({0, 1}).to_string() == "1");
    CHECK(curvature(t2, Connection::trivial(t2, 2)).at({0, 1}).is_zero());
    CHECK(has_curvature_type(t2, conn_a(), sympl(t2)));
    CHECK_FALSE(has_curvature_type(t2, conn_a(), Cochain(2, 2, 2)));
    CHECK(has_curvature_type(t2, Connection::trivial(t2), Cochain(2, 2, 2)));

    Connection wrong = Connection::trivial(t2);
    wrong.matrices.pop_back();
    CHECK_THROWS_AS(curvature(t2, wrong), DimensionMismatch);
}

TEST_CASE("curvature is tensorial") {
    Rng rng(101);
    const std::vector<LieRinehartAlgebra> algebras{tangent_algebroid(2), cotangent_poisson_algebroid(so3_bivector()),
                                                   atiyah_algebroid(1, 1)};
    for (const auto& a : algebras) {
        for (std::size_t m : {1u, 2u}) {
            for (int t = 0; t < 10; ++t) {
                const Connection conn = random_connection(rng, a, m);
                const CurvatureTensor r = curvature(a, conn);
                LElement u = a.zero_element();
                LElement v = a.zero_element();
                for (auto& c : u.coords) c = rng.poly(a.nvars(), 1, 2, true);
                for (auto& c : v.coords) c = rng.poly(a.nvars(), 1, 2, true);
                const std::vector<Poly> s = rng.section(m, a.nvars(), 2);

                const auto nv = covariant_derivative(a, conn, v, s);
                const auto nu = covariant_derivative(a, conn, u, s);
                const auto lhs_a = covariant_derivative(a, conn, u, nv);
                const auto lhs_b = covariant_derivative(a, conn, v, nu);
                const auto lhs_c = covariant_derivative(a, conn, bracket(a, u, v), s);
                std::vector<Poly> expected(m, Poly(a.nvars()));
                for (const auto& [ij, mat] : r) {
                    const Poly coef = u.coords[ij.first] * v.coords[ij.second] - u.coords[ij.second] * v.coords[ij.first];
                    const auto rs = mat.apply(s);
                    for (std::size_t q = 0; q < m; ++q) expected[q] += coef * rs[q];
                }
                for (std::size_t q = 0; q < m; ++q) CHECK(lhs_a[q] - lhs_b[q] - lhs_c[q] == expected[q]);
            }
        }
    }
}
