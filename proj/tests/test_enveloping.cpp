#include <doctest.h>

#include <functional>
#include <set>
#include <thread>

#include "lrkit/enveloping.hpp"
#include "lrkit/errors.hpp"
#include "lrkit/symmetric.hpp"
#include "oracles.hpp"

using namespace lrk;

namespace {

Poly P(const char* s, std::size_t n) { return Poly::parse(s, n); }

Cochain sympl(const LieRinehartAlgebra& a) {
    Cochain w(2, a.rank(), a.nvars());
    w.set({0, 1}, Poly::constant(a.nvars(), 1));
    return w;
}

UElement U(const UPresentation& p, const char* s) { return parse_uelement(s, p); }

std::vector<Poly> test_polys(std::size_t n) {
    std::vector<Poly> out{Poly::constant(n, 1)};
    for (std::size_t i = 0; i < n; ++i) {
        for (unsigned e = 1; e <= 3; ++e) out.push_back(Poly::variable(n, i).pow(e));
    }
    if (n >= 2) out.push_back(P("x1^2*x2 + 3*x2^3", n));
    return out;
}

/// Every builtin presentation used by the randomized checks.
std::vector<std::pair<std::string, UPresentation>> presentations() {
    std::vector<std::pair<std::string, UPresentation>> out;
    out.emplace_back("weyl", UPresentation(tangent_algebroid(1)));
    out.emplace_back("tangent:2", UPresentation(tangent_algebroid(2)));
    out.emplace_back("tangent:2+sympl", UPresentation(tangent_algebroid(2), sympl(tangent_algebroid(2))));
    out.emplace_back("heis", UPresentation(heisenberg_algebra()));
    out.emplace_back("heis+e1e2", UPresentation(heisenberg_algebra(), sympl(heisenberg_algebra())));
    out.emplace_back("sl2", UPresentation(sl2_algebra()));
    out.emplace_back("abelian2", UPresentation(abelian_algebroid(2)));
    out.emplace_back("so3-poisson", UPresentation(cotangent_poisson_algebroid(so3_bivector())));
    out.emplace_back("atiyah:1:1", UPresentation(atiyah_algebroid(1, 1)));
    return out;
}

std::vector<oracle::OpAtom> to_ops(const Word& w) {
    std::vector<oracle::OpAtom> ops;
    for (const auto& a : w) {
        if (a.is_gen()) ops.push_back(oracle::partial(std::get<std::size_t>(a.value)));
        else ops.push_back(oracle::mul_by(std::get<Poly>(a.value)));
    }
    return ops;
}

}  // namespace

TEST_CASE("Weyl normal forms") {
    const UPresentation w(tangent_algebroid(1));
    CHECK(U(w, "d1 x1").to_string() == "x1*d1 + 1");
    CHECK(U(w, "x1 d1").to_string() == "x1*d1");
    CHECK(U(w, "x1").to_string() == "x1");
    CHECK(U(w, "1").to_string() == "1");
    CHECK(U(w, "0").to_string() == "0");
    const UElement u = U(w, "d1 d1 x1 x1");
    CHECK(u.to_string() == "x1^2*d1^2 + 4*x1*d1 + 2");
    const Word word = parse_word("d1 d1 x1 x1", w);
    for (const Poly& g : test_polys(1)) CHECK(oracle::act_normal(u.terms(), g) == oracle::act(to_ops(word), g));
}

TEST_CASE("twisted normal form") {
    const auto t2 = tangent_algebroid(2);
    const UPresentation p(t2, sympl(t2));
    CHECK(U(p, "d2 d1").to_string() == "d1 d2 - 1");
    CHECK(U(p, "d1 d2").to_string() == "d1 d2");
}

TEST_CASE("bad generator atoms") {
    const UPresentation w(tangent_algebroid(1));
    CHECK_THROWS_AS(parse_uelement("d2", w), ParseError);
    CHECK_THROWS_AS(parse_word("d1 x2", w), ParseError);
    CHECK_THROWS_AS(u_normal_form(w, {Atom::gen(3)}), InvalidArgument);
}

TEST_CASE("non-cocycle twist is rejected unless unchecked") {
    Cochain bad(2, 3, 3);
    bad.set({0, 1}, P("x3", 3));
    CHECK_THROWS_AS(UPresentation(tangent_algebroid(3), bad), PreconditionError);
    CHECK_NOTHROW(UPresentation::unchecked(tangent_algebroid(3), bad));
}

TEST_CASE("normal forms agree with the operator-action oracle") {
    Rng rng(31);
    for (std::size_t n : {1u, 2u}) {
        const UPresentation p(tangent_algebroid(n));
        for (int t = 0; t < 150; ++t) {
            Word word;
            const long len = rng.uniform(1, 6);
            for (long k = 0; k < len; ++k) {
                if (rng.coin()) word.push_back(Atom::gen(static_cast<std::size_t>(rng.uniform(0, n - 1))));
                else word.push_back(Atom::ring(rng.poly(n, 2, 2)));
            }
            const UElement u = u_normal_form(p, word);
            for (const Poly& g : test_polys(n)) {
                CHECK(oracle::act_normal(u.terms(), g) == oracle::act(to_ops(word), g));
            }
        }
    }
}

TEST_CASE("products and commutators") {
    const UPresentation w(tangent_algebroid(1));
    const UElement xd = U(w, "x1*d1");
    const UElement sq = u_mul(w, xd, xd);
    CHECK(sq.to_string() == "x1^2*d1^2 + x1*d1");
    for (const Poly& g : test_polys(1)) {
        CHECK(oracle::act_normal(sq.terms(), g) == oracle::act_normal(xd.terms(), oracle::act_normal(xd.terms(), g)));
    }
    CHECK(u_mul(w, xd, w.one()) == xd);
    CHECK(u_commutator(w, U(w, "d1"), U(w, "x1")) == w.one());
    CHECK(u_commutator(w, xd, xd).is_zero());
    CHECK(u_commutator(w, xd, U(w, "d1")) == U(w, "-d1"));

    const UPresentation ab(abelian_algebroid(3));
    Rng rng(2);
    for (int t = 0; t < 30; ++t) {
        const UElement u = random_uelement(rng, ab, 3);
        const UElement v = random_uelement(rng, ab, 3);
        CHECK(u_mul(ab, u, v) == u_mul(ab, v, u));
    }
}

TEST_CASE("filtration degree") {
    const UPresentation w(tangent_algebroid(1));
    CHECK(filtration_degree(U(w, "x1^2*d1^2 + 1")) == 2);
    CHECK(filtration_degree(U(w, "x1^3")) == 0);
    CHECK(filtration_degree(U(w, "0")) == -1);
}

TEST_CASE("principal symbols") {
    const UPresentation w(tangent_algebroid(1));
    CHECK(principal_symbol(U(w, "x1^2*d1^2 + 4*x1*d1 + 2")).to_string() == "x1^2*s1^2");
    CHECK(principal_symbol(U(w, "x1 + 1")).to_string() == "x1 + 1");
    const auto t2 = tangent_algebroid(2);
    const UPresentation tw(t2, sympl(t2));
    CHECK(principal_symbol(U(tw, "d1 d2 - 1")).to_string() == "s1 s2");
    CHECK_THROWS_AS(principal_symbol(U(w, "0")), InvalidArgument);
}

TEST_CASE("PBW symmetrization") {
    const UPresentation t2(tangent_algebroid(2));
    CHECK(pbw_symmetrize(t2, parse_symelement("s1 s2", 2, 2)) == U(t2, "d1 d2"));
    const UPresentation w(tangent_algebroid(1));
    CHECK(pbw_symmetrize(w, parse_symelement("s1^2", 1, 1)) == U(w, "d1^2"));
    CHECK(pbw_symmetrize(w, parse_symelement("x1*s1", 1, 1)) == U(w, "x1*d1"));

    const UPresentation h(heisenberg_algebra());
    // (e1 e2 + e2 e1) / 2 = e1 e2 - e3 / 2
    CHECK(pbw_symmetrize(h, parse_symelement("s1 s2", 3, 0)) == U(h, "d1 d2 - 1/2*d3"));

    Rng rng(41);
    for (const auto& [name, p] : presentations()) {
        for (int t = 0; t < 20; ++t) {
            const SymElement s = random_symelement(rng, p.rank(), p.nvars(), 3);
            const int d = s.degree();
            CHECK(principal_symbol(pbw_symmetrize(p, s)) == s.homogeneous_part(d));
        }
    }
}

TEST_CASE("printed elements re-parse to equal values") {
    Rng rng(43);
    for (const auto& [name, p] : presentations()) {
        for (int t = 0; t < 30; ++t) {
            const UElement u = random_uelement(rng, p, 3);
            CHECK(parse_uelement(u.to_string(), p) == u);
            const SymElement s = random_symelement(rng, p.rank(), p.nvars(), 3);
            CHECK(parse_symelement(s.to_string(), p.rank(), p.nvars()) == s);
        }
    }
}

TEST_CASE("PBW monomial counts match in twisted and untwisted algebras") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto t = tangent_algebroid(n);
        std::vector<UPresentation> ps{UPresentation(t)};
        if (n >= 2) ps.emplace_back(t, sympl(t));
        for (const auto& p : ps) {
            for (unsigned k = 0; k <= 4; ++k) {
                // Leading monomials of all words of length <= k in the generators.
                std::set<MultiIndex> leading;
                std::vector<Word> frontier{Word{}};
                for (unsigned len = 0; len <= k; ++len) {
                    std::vector<Word> next;
                    for (const auto& w : frontier) {
                        const UElement u = u_normal_form(p, w);
                        const SymElement top = principal_symbol(u);
                        for (const auto& [beta, f] : top.terms()) leading.insert(beta);
                        if (len == k) continue;
                        for (std::size_t i = 0; i < n; ++i) {
                            Word longer = w;
                            longer.push_back(Atom::gen(i));
                            next.push_back(std::move(longer));
                        }
                    }
                    frontier = std::move(next);
                }
                std::size_t binom = 1;
                for (unsigned j = 1; j <= n; ++j) binom = binom * (k + j) / j;
                CHECK(leading.size() == binom);
            }
            // Sorted monomials are their own normal forms; distinct ones stay distinct.
            std::set<std::string> printed;
            for (unsigned d = 0; d <= 4; ++d) {
                std::vector<MultiIndex> all;
                std::function<void(MultiIndex, std::size_t, unsigned)> rec = [&](MultiIndex b, std::size_t i,
                                                                              unsigned left) {
                    if (i + 1 == n) {
                        b[i] = left;
                        all.push_back(b);
                        return;
                    }
                    for (unsigned c = 0; c <= left; ++c) {
                        b[i] = c;
                        rec(b, i + 1, left - c);
                    }
                };
                rec(MultiIndex(n, 0), 0, d);
                for (const auto& beta : all) {
                    Word w;
                    for (std::size_t i = 0; i < n; ++i) {
                        for (unsigned c = 0; c < beta[i]; ++c) w.push_back(Atom::gen(i));
                    }
                    const UElement u = u_normal_form(p, w);
                    CHECK(u == UElement::monomial(beta, Poly::constant(n, 1)));
                    printed.insert(u.to_string());
                }
            }
            std::size_t total = 1;
            for (unsigned j = 1; j <= n; ++j) total = total * (4 + j) / j;
            CHECK(printed.size() == total);
        }
    }
}

TEST_CASE("zero twist and no twist give identical normal forms") {
    const auto t2 = tangent_algebroid(2);
    const UPresentation plain(t2);
    const UPresentation zero(t2, Cochain(2, 2, 2));
    Rng rng(47);
    for (int t = 0; t < 50; ++t) {
        const UElement u = random_uelement(rng, plain, 3);
        const UElement v = random_uelement(rng, plain, 3);
        CHECK(u_mul(plain, u, v) == u_mul(zero, u, v));
        CHECK(u_mul(plain, u, v).to_string() == u_mul(zero, u, v).to_string());
    }
}

TEST_CASE("filtered product and commutator bounds") {
    Rng rng(53);
    for (const auto& [name, p] : presentations()) {
        CAPTURE(name);
        for (int t = 0; t < 500; ++t) {
            const UElement u = random_uelement(rng, p, 3);
            const UElement v = random_uelement(rng, p, 3);
            const int du = filtration_degree(u);
            const int dv = filtration_degree(v);
            CHECK(filtration_degree(u_mul(p, u, v)) <= du + dv);
            CHECK(filtration_degree(u_commutator(p, u, v)) <= du + dv - 1);
        }
    }
}

TEST_CASE("associativity probe") {
    for (const auto& [name, p] : presentations()) {
        CAPTURE(name);
        const ProbeReport r = associativity_probe(p, 200, 7, 2);
        CHECK(r.passed);
        CHECK(r.trials >= 200);
    }
    Cochain w(2, 3, 0);
    w.set({0, 1}, Poly::constant(0, 5));
    w.set({1, 2}, Poly::constant(0, -2));
    CHECK(associativity_probe(UPresentation(abelian_algebroid(3), w), 100, 3, 2).passed);
    CHECK_THROWS_AS(associativity_probe(UPresentation(abelian_algebroid(3)), 0, 3, 2), InvalidArgument);
}

TEST_CASE("associativity probe fails for a non-closed twist") {
    Cochain bad(2, 3, 3);
    bad.set({0, 1}, P("x3", 3));
    const auto t3 = tangent_algebroid(3);
    CHECK_FALSE(is_cocycle(t3, bad));
    const ProbeReport r = associativity_probe(UPresentation::unchecked(t3, bad), 50, 1, 2);
    CHECK_FALSE(r.passed);
    CHECK(r.witness == "(uv)w - u(vw) = 1 for u = d3, v = d2, w = d1");

    // Solvable Lie algebra [e1, e2] = e2, [e1, e3] = e3 with w(e2, e3) = 1.
    LieRinehartAlgebra g(0, 3);
    g.set_bracket(0, 1, {Poly(0), Poly::constant(0, 1), Poly(0)});
    g.set_bracket(0, 2, {Poly(0), Poly(0), Poly::constant(0, 1)});
    Cochain w(2, 3, 0);
    w.set({1, 2}, Poly::constant(0, 1));
    CHECK(ce_differential(g, w).scalar_value(std::vector<std::size_t>{0, 1, 2}) == Poly::constant(0, -2));
    CHECK_FALSE(associativity_probe(UPresentation::unchecked(g, w), 50, 1, 2).passed);
}

TEST_CASE("symbol multiplicativity and Poisson compatibility") {
    Rng rng(59);
    for (const auto& [name, p] : presentations()) {
        CAPTURE(name);
        const auto& a = p.algebroid();
        int tight = 0;
        for (int t = 0; t < 200; ++t) {
            const UElement u = random_uelement(rng, p, 3);
            const UElement v = random_uelement(rng, p, 3);
            const int du = filtration_degree(u);
            const int dv = filtration_degree(v);
            const UElement uv = u_mul(p, u, v);
            if (filtration_degree(uv) == du + dv) {
                CHECK(principal_symbol(uv) == sym_mul(principal_symbol(u), principal_symbol(v)));
            }
            const UElement c = u_commutator(p, u, v);
            if (!c.is_zero() && filtration_degree(c) == du + dv - 1) {
                ++tight;
                CHECK(principal_symbol(c) == poisson_bracket(a, principal_symbol(u), principal_symbol(v)));
            }
        }
        if (name != "abelian2") CHECK(tight > 0);
    }
}

TEST_CASE("induced algebroid reproduces the structure data") {
    for (const auto& [name, p] : presentations()) {
        CAPTURE(name);
        CHECK(induced_algebroid(p) == p.algebroid());
    }
    CHECK(induced_algebroid(UPresentation(tangent_algebroid(1))) == tangent_algebroid(1));
    CHECK(induced_algebroid(UPresentation(atiyah_algebroid(2, 1))) == atiyah_algebroid(2, 1));
}

TEST_CASE("twist isomorphism") {
    const auto t2 = tangent_algebroid(2);
    const UPresentation from(t2, sympl(t2));
    const UPresentation to(t2);
    const TwistIsomorphism iso(from, {P("-x2", 2), Poly(2)}, to);
    CHECK(iso.products_checked() >= 50);
    REQUIRE(iso.generator_images().size() == 2);
    CHECK(iso.generator_images()[0].to_string() == "d1 - x2");
    CHECK(iso.generator_images()[1].to_string() == "d2");
    CHECK(u_commutator(to, iso.generator_images()[0], iso.generator_images()[1]) == to.one());

    Rng rng(61);
    for (int t = 0; t < 30; ++t) {
        const UElement u = random_uelement(rng, from, 2);
        const UElement v = random_uelement(rng, from, 2);
        CHECK(iso.apply(u_mul(from, u, v)) == u_mul(to, iso.apply(u), iso.apply(v)));
        CHECK(filtration_degree(iso.apply(u)) == filtration_degree(u));
    }

    const TwistIsomorphism identity(to, {Poly(2), Poly(2)}, to);
    const TwistIsomorphism back(to, {P("x2", 2), Poly(2)}, from);
    for (int t = 0; t < 20; ++t) {
        const UElement u = random_uelement(rng, to, 3);
        CHECK(identity.apply(u) == u);
        const UElement w = random_uelement(rng, from, 3);
        CHECK(back.apply(iso.apply(w)) == w);
    }

    CHECK_THROWS_AS(TwistIsomorphism(from, {Poly(2), Poly(2)}, to), PreconditionError);
}

TEST_CASE("module action through a connection") {
    const auto t1 = tangent_algebroid(1);
    const UPresentation w(t1);
    const Connection flat = Connection::trivial(t1);
    CHECK(u_module_action(w, flat, U(w, "x1*d1"), {P("x1^2", 1)}) == std::vector<Poly>{P("2*x1^2", 1)});
    CHECK(u_module_action(w, flat, w.one(), {P("x1^3 + 2", 1)}) == std::vector<Poly>{P("x1^3 + 2", 1)});

    const auto t2 = tangent_algebroid(2);
    const UPresentation tw(t2, sympl(t2));
    Connection conn = Connection::trivial(t2);
    conn.matrices[0].at(0, 0) = P("-x2", 2);
    const UElement comm = U(tw, "d1 d2") - U(tw, "d2 d1");
    CHECK(u_module_action(tw, conn, comm, {Poly::constant(2, 1)}) == std::vector<Poly>{Poly::constant(2, 1)});

    // Curvature type mismatch.
    CHECK_THROWS_AS(u_module_action(UPresentation(t2), conn, U(tw, "d1"), {Poly::constant(2, 1)}), PreconditionError);

    // The action respects products: (uv).s = u.(v.s).
    Rng rng(67);
    for (int t = 0; t < 20; ++t) {
        const UElement u = random_uelement(rng, tw, 2);
        const UElement v = random_uelement(rng, tw, 2);
        const std::vector<Poly> s{rng.poly(2, 3, 3)};
        CHECK(u_module_action(tw, conn, u_mul(tw, u, v), s) ==
              u_module_action(tw, conn, u, u_module_action(tw, conn, v, s)));
    }
}

TEST_CASE("shared presentation is safe across threads") {
    const UPresentation p(sl2_algebra());
    std::vector<std::string> results(4);
    std::vector<std::thread> threads;
    for (std::size_t k = 0; k < results.size(); ++k) {
        threads.emplace_back([&, k] { results[k] = U(p, "d3 d3 d2 d2 d1 d3 d2").to_string(); });
    }
    for (auto& t : threads) t.join();
    const UPresentation fresh(sl2_algebra());
    for (const auto& r : results) CHECK(r == U(fresh, "d3 d3 d2 d2 d1 d3 d2").to_string());
}
