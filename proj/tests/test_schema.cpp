#include <doctest.h>

#include "lrkit/diff_operators.hpp"
#include "lrkit/errors.hpp"
#include "lrkit/workspace.hpp"

using namespace lrk;
using schema::json;

namespace {

Poly P(const char* s, std::size_t n) { return Poly::parse(s, n); }

const char* kPerturbed = R"({
  "nvars": 2, "rank": 2, "basis_names": ["d1", "d2"],
  "brackets": [{"i": 1, "j": 2, "coords": ["1", "0"]}],
  "anchors": [["1", "0"], ["0", "1"]]
})";

}  // namespace

TEST_CASE("algebroid schema") {
    const auto a = schema::algebroid_from_json(schema::parse_json(kPerturbed));
    CHECK(a.rank() == 2);
    CHECK(a.structure(0, 1) == LElement{{Poly::constant(2, 1), Poly(2)}});
    CHECK(a.anchor(1) == Derivation::partial(2, 1));

    // Omitted brackets are zero.
    const auto t = schema::algebroid_from_json(
        schema::parse_json(R"({"nvars": 2, "rank": 2, "anchors": [["1", "0"], ["0", "1"]]})"));
    CHECK(t == tangent_algebroid(2));
}

TEST_CASE("algebroid JSON round-trips for builtins") {
    for (const char* name : {"weyl", "tangent:3", "heis", "sl2", "so3-poisson", "abelian:2", "atiyah:2:1"}) {
        const auto a = builtin_algebroid(name);
        REQUIRE(a.has_value());
        const json j = schema::algebroid_to_json(*a);
        CHECK(schema::algebroid_from_json(j) == *a);
        CHECK(schema::algebroid_from_json(schema::parse_json(j.dump())) == *a);
    }
    CHECK_FALSE(builtin_algebroid("tangent:x").has_value());
    CHECK_FALSE(builtin_algebroid("nothing").has_value());
    CHECK(builtin_algebroid("abelian3") == abelian_algebroid(3));
}

TEST_CASE("algebroid schema errors") {
    CHECK_THROWS_AS(schema::parse_json("{"), ParseError);
    CHECK_THROWS_AS(schema::algebroid_from_json(schema::parse_json(R"({"rank": 1})")), ParseError);
    CHECK_THROWS_AS(schema::algebroid_from_json(schema::parse_json(R"({"nvars": 1, "rank": 1, "anchors": [["1", "0"]]})")),
                    DimensionMismatch);
    CHECK_THROWS_AS(schema::algebroid_from_json(schema::parse_json(
                        R"({"nvars": 1, "rank": 1, "anchors": [["1"]], "brackets": [{"i": 1, "j": 2, "coords": ["0"]}]})")),
                    DimensionMismatch);
    CHECK_THROWS_AS(schema::algebroid_from_json(schema::parse_json(R"({"nvars": 1, "rank": 1, "anchors": [["y"]]})")),
                    ParseError);
}

TEST_CASE("cochain and connection schemas") {
    const json cj = schema::parse_json(R"({"degree": 2, "coeff_rank": 1, "entries": [{"indices": [1, 2], "value": ["x1"]}]})");
    const Cochain c = schema::cochain_from_json(cj, 2, 2);
    CHECK(c.scalar_value(std::vector<std::size_t>{0, 1}) == P("x1", 2));
    CHECK(schema::cochain_from_json(schema::cochain_to_json(c), 2, 2) == c);

    const Cochain t = schema::cochain_from_text("w(d2,d1) = x1; w(d1,d3) = 1", 2, 3, 2);
    CHECK(t.scalar_value(std::vector<std::size_t>{0, 1}) == P("-x1", 2));
    CHECK(t.scalar_value(std::vector<std::size_t>{0, 2}) == Poly::constant(2, 1));
    CHECK(schema::cochain_from_text(t.to_string(), 2, 3, 2) == t);
    CHECK(schema::cochain_text_degree("rho(d1) = -x2") == 1);
    CHECK(schema::cochain_from_text("0", 2, 2, 2).is_zero());
    CHECK_THROWS_AS(schema::cochain_from_text("w(d1) = 1", 2, 2, 2), DimensionMismatch);
    CHECK_THROWS_AS(schema::cochain_from_text("w d1 = 1", 1, 2, 2), ParseError);

    const json kj = schema::parse_json(R"({"rank": 1, "matrices": [[["-x2"]], [["0"]]]})");
    const Connection conn = schema::connection_from_json(kj, 2, 2);
    CHECK(conn.matrices[0].at(0, 0) == P("-x2", 2));
    const Connection back = schema::connection_from_json(schema::connection_to_json(conn), 2, 2);
    CHECK(back.matrices == conn.matrices);
    CHECK_THROWS_AS(schema::connection_from_json(schema::parse_json(R"({"rank": 1, "matrices": [[["0"]]]})"), 2, 2),
                    DimensionMismatch);
}

TEST_CASE("operator schema") {
    const json oj = schema::parse_json(R"({"rank": 2, "entries": [["d1", "1"], ["0", "x1*d2"]]})");
    const OperatorElement t = schema::operator_from_json(oj, 2);
    CHECK(t.to_string() == "[[d1, 1], [0, x1*d2]]");
    CHECK(schema::operator_from_json(schema::operator_to_json(t), 2) == t);
    CHECK_THROWS_AS(schema::operator_from_json(schema::parse_json(R"({"rank": 2, "entries": [["d1"]]})"), 2),
                    DimensionMismatch);
}

TEST_CASE("workspace builtins and names") {
    Workspace ws;
    const auto t2 = ws.algebroid("tangent:2");
    CHECK(t2 == tangent_algebroid(2));
    CHECK(ws.cochain("sympl", t2).scalar_value(std::vector<std::size_t>{0, 1}) == Poly::constant(2, 1));
    CHECK(ws.cochain("zero", t2).degree() == 2);
    CHECK(ws.cochain("rho0", t2).scalar_value(std::vector<std::size_t>{0}) == P("-x2", 2));
    CHECK(ws.connection("connA", t2).matrices[0].at(0, 0) == P("-x2", 2));
    CHECK(ws.op("d1 x1", 1).to_string() == "x1*d1 + 1");
    CHECK(ws.infer_nvars("x3*d1") == 3);
    CHECK(ws.infer_nvars("1") == 1);
    CHECK_THROWS_AS(ws.algebroid("nothing"), ParseError);
    CHECK_THROWS_AS(ws.cochain("sympl", t2, 1), DimensionMismatch);

    ws.load_json(schema::parse_json(std::string(R"({"algebroids": {"pert": )") + kPerturbed +
                                    R"(}, "cochains": {"w": {"algebroid": "pert", "degree": 2, "coeff_rank": 1,
                                      "entries": [{"indices": [1, 2], "value": ["1"]}]}}})"));
    CHECK(ws.is_algebroid("pert"));
    const auto pert = ws.algebroid("pert");
    CHECK_FALSE(check_axioms(pert).passed());
    CHECK(ws.cochain("w", pert).degree() == 2);

    CHECK_THROWS_AS(ws.load_json(schema::parse_json(R"({"widgets": {}})")), ParseError);
    CHECK_THROWS_AS(ws.load_json(schema::parse_json(std::string(R"({"algebroids": {"pert": )") + kPerturbed + "}}")),
                    InvalidArgument);

    Workspace lone;
    lone.load_json(schema::parse_json(kPerturbed), "fixture");
    CHECK(lone.algebroid("fixture") == pert);
}
