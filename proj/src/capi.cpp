// Only the C interface is exported from the shared library.
#pragma GCC visibility push(default)
#include "lrkit/lrkit.h"
#pragma GCC visibility pop

#include <cstring>
#include <string>

#include "lrkit/diff_operators.hpp"
#include "lrkit/enveloping.hpp"
#include "lrkit/errors.hpp"
#include "lrkit/symmetric.hpp"
#include "lrkit/text.hpp"
#include "lrkit/workspace.hpp"

using lrk::schema::json;

struct lrk_workspace {
    lrk::Workspace ws;
};
struct lrk_algebroid {
    lrk::LieRinehartAlgebra a;
};
struct lrk_presentation {
    lrk::UPresentation p;
};
struct lrk_cochain {
    lrk::Cochain c;
};
struct lrk_connection {
    lrk::Connection c;
};
struct lrk_operator {
    lrk::OperatorElement t;
};

namespace {

thread_local std::string last_error;

template <class F>
lrk_status guard(F&& body) {
    last_error.clear();
    try {
        body();
        return LRK_OK;
    } catch (const lrk::ParseError& e) {
        last_error = e.what();
        return LRK_PARSE_ERROR;
    } catch (const lrk::DimensionMismatch& e) {
        last_error = e.what();
        return LRK_DIMENSION_MISMATCH;
    } catch (const lrk::PreconditionError& e) {
        last_error = e.what();
        return LRK_PRECONDITION;
    } catch (const lrk::VerificationError& e) {
        last_error = e.what();
        return LRK_CHECK_FAILED;
    } catch (const lrk::InvalidArgument& e) {
        last_error = e.what();
        return LRK_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return LRK_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(const void* p, const char* what) {
    if (p == nullptr) throw lrk::InvalidArgument(std::string(what) + " is null");
}

/// Writes the report and turns a negative answer into LRK_CHECK_FAILED.
template <class F>
lrk_status report(char** out, F&& body) {
    bool failed = false;
    const lrk_status s = guard([&] {
        require(out, "output pointer");
        json j = body(failed);
        *out = dup(j.dump());
    });
    if (s == LRK_OK && failed) {
        last_error = "check failed";
        return LRK_CHECK_FAILED;
    }
    return s;
}

const char* verdict(bool passed) { return passed ? "pass" : "fail"; }

/// {"result": v}.  The value is computed before the object is built: GCC
/// leaks initializer-list temporaries when a later element throws.
template <class T>
json result_json(T&& v) {
    json j;
    j["result"] = std::forward<T>(v);
    return j;
}

lrk::Derivation parse_derivation(const char* text, std::size_t nvars) {
    const lrk::UElement u = lrk::parse_uelement(text, lrk::weyl_presentation(nvars));
    std::vector<lrk::Poly> coeffs(nvars, lrk::Poly(nvars));
    for (const auto& [alpha, f] : u.terms()) {
        if (lrk::multi_index_degree(alpha) != 1) {
            throw lrk::InvalidArgument("'" + std::string(text) + "' is not a derivation");
        }
        for (std::size_t i = 0; i < nvars; ++i) {
            if (alpha[i] == 1) coeffs[i] = f;
        }
    }
    return lrk::Derivation(std::move(coeffs));
}

std::string dname(std::size_t i) { return "d" + std::to_string(i + 1); }

json axioms_json(const lrk::AxiomReport& r, const std::string& prefix) {
    json j;
    j[prefix + "leibniz"] = verdict(r.leibniz_consistent.passed);
    j[prefix + "jacobi"] = verdict(r.jacobi.passed);
    j[prefix + "anchor_morphism"] = verdict(r.anchor_morphism.passed);
    return j;
}

void add_witnesses(json& w, const lrk::AxiomReport& r) {
    for (const auto* c : {&r.leibniz_consistent, &r.jacobi, &r.anchor_morphism}) {
        if (!c->passed) w.push_back(c->witness);
    }
}

}  // namespace

extern "C" {

const char* lrk_last_error(void) { return last_error.c_str(); }

const char* lrk_status_name(lrk_status s) {
    switch (s) {
        case LRK_OK: return "ok";
        case LRK_CHECK_FAILED: return "check failed";
        case LRK_PARSE_ERROR: return "parse error";
        case LRK_INVALID_ARGUMENT: return "invalid argument";
        case LRK_DIMENSION_MISMATCH: return "dimension mismatch";
        case LRK_PRECONDITION: return "precondition violated";
        case LRK_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void lrk_string_free(char* s) { std::free(s); }

// Workspace -------------------------------------------------------------------

lrk_status lrk_workspace_new(lrk_workspace** out) {
    return guard([&] {
        require(out, "output pointer");
        *out = new lrk_workspace{};
    });
}

void lrk_workspace_free(lrk_workspace* ws) { delete ws; }

lrk_status lrk_workspace_load_file(lrk_workspace* ws, const char* path) {
    return guard([&] {
        require(ws, "workspace");
        require(path, "path");
        ws->ws.load_file(path);
    });
}

lrk_status lrk_workspace_load_json(lrk_workspace* ws, const char* json_text, const char* stem) {
    return guard([&] {
        require(ws, "workspace");
        require(json_text, "json");
        ws->ws.load_json(lrk::schema::parse_json(json_text), stem ? stem : "algebroid");
    });
}

lrk_status lrk_workspace_check(const lrk_workspace* ws, size_t trials, uint64_t seed, char** out) {
    return report(out, [&](bool& failed) {
        require(ws, "workspace");
        const lrk::Workspace& w = ws->ws;
        json checks;
        json witnesses = json::array();
        auto record = [&](const std::string& key, bool passed, const std::string& witness) {
            checks[key] = verdict(passed);
            if (!passed) {
                failed = true;
                witnesses.push_back(witness);
            }
        };
        for (const auto& [name, def] : w.algebroids()) {
            const lrk::LieRinehartAlgebra a = lrk::schema::algebroid_from_json(def);
            const lrk::AxiomReport r = lrk::check_axioms(a);
            checks.update(axioms_json(r, name + "."));
            if (!r.passed()) {
                failed = true;
                add_witnesses(witnesses, r);
                continue;
            }
            const auto pr = lrk::check_poisson_axioms(a, trials, seed);
            record(name + ".poisson", pr.passed, pr.witness);
            const auto ap = lrk::associativity_probe(lrk::UPresentation(a), trials, seed, 2);
            record(name + ".associativity", ap.passed, ap.witness);
        }
        for (const auto& [name, def] : w.cochains()) {
            if (!def.contains("algebroid")) continue;
            const auto a = w.algebroid(def.at("algebroid").get<std::string>());
            const lrk::Cochain c = lrk::schema::cochain_from_json(def, a.rank(), a.nvars());
            // Only 2-cochains are twist candidates; other degrees are plain data.
            if (c.degree() != 2) continue;
            const bool closed = lrk::is_cocycle(a, c);
            record(name + ".cocycle", closed, closed ? "" : lrk::ce_differential(a, c).to_string("d" + name));
            if (c.coeff_rank() == 1) {
                const auto ap = lrk::associativity_probe(lrk::UPresentation::unchecked(a, c), trials, seed, 2);
                record(name + ".associativity", ap.passed, ap.witness);
            }
        }
        for (const auto& [name, def] : w.connections()) {
            if (!def.contains("algebroid")) continue;
            const auto a = w.algebroid(def.at("algebroid").get<std::string>());
            w.connection(name, a);
            checks[name + ".connection"] = verdict(true);
        }
        for (const auto& [name, def] : w.operators()) {
            const std::size_t n = def.contains("nvars") ? def.at("nvars").get<std::size_t>() : w.infer_nvars(def.dump());
            const lrk::OperatorElement t = w.op(name, n);
            const int k = lrk::op_order(t);
            const bool ok = lrk::order_predicate(t, std::max(k, 0)) && (k <= 0 || !lrk::order_predicate(t, k - 1));
            record(name + ".order", ok, "order_predicate disagrees with order " + std::to_string(k));
        }
        json j;
        j["result"] = verdict(!failed);
        j.update(checks);
        if (!witnesses.empty()) j["witness"] = witnesses;
        return j;
    });
}

// Algebroids ------------------------------------------------------------------

lrk_status lrk_algebroid_get(const lrk_workspace* ws, const char* spec, lrk_algebroid** out) {
    return guard([&] {
        require(spec, "algebroid name");
        require(out, "output pointer");
        lrk::Workspace empty;
        *out = new lrk_algebroid{(ws ? ws->ws : empty).algebroid(spec)};
    });
}

void lrk_algebroid_free(lrk_algebroid* a) { delete a; }
size_t lrk_algebroid_rank(const lrk_algebroid* a) { return a ? a->a.rank() : 0; }
size_t lrk_algebroid_nvars(const lrk_algebroid* a) { return a ? a->a.nvars() : 0; }

lrk_status lrk_algebroid_to_json(const lrk_algebroid* a, char** out) {
    return report(out, [&](bool&) {
        require(a, "algebroid");
        return lrk::schema::algebroid_to_json(a->a);
    });
}

lrk_status lrk_algebroid_equal(const lrk_algebroid* a, const lrk_algebroid* b, int* equal) {
    return guard([&] {
        require(a, "algebroid");
        require(b, "algebroid");
        require(equal, "output pointer");
        *equal = a->a == b->a ? 1 : 0;
    });
}

lrk_status lrk_check_axioms(const lrk_algebroid* a, char** out) {
    return report(out, [&](bool& failed) {
        require(a, "algebroid");
        const lrk::AxiomReport r = lrk::check_axioms(a->a);
        failed = !r.passed();
        json j;
        j["result"] = verdict(r.passed());
        j.update(axioms_json(r, ""));
        json w = json::array();
        add_witnesses(w, r);
        if (!w.empty()) j["witness"] = w;
        return j;
    });
}

lrk_status lrk_log_member(const lrk_algebroid* a, const char* f, const char* derivation, char** out) {
    return report(out, [&](bool& failed) {
        require(a, "algebroid");
        require(f, "polynomial");
        require(derivation, "derivation");
        const std::size_t n = a->a.nvars();
        const bool member = lrk::log_derivation_member(lrk::Poly::parse(f, n), parse_derivation(derivation, n));
        failed = !member;
        return result_json(member);
    });
}

// Cochains and connections -------------------------------------------------------

lrk_status lrk_cochain_get(const lrk_workspace* ws, const lrk_algebroid* a, const char* spec, int degree,
                           lrk_cochain** out) {
    return guard([&] {
        require(a, "algebroid");
        require(spec, "cochain name");
        require(out, "output pointer");
        lrk::Workspace empty;
        std::optional<std::size_t> d;
        if (degree >= 0) d = static_cast<std::size_t>(degree);
        *out = new lrk_cochain{(ws ? ws->ws : empty).cochain(spec, a->a, d)};
    });
}

void lrk_cochain_free(lrk_cochain* c) { delete c; }

lrk_status lrk_cochain_to_json(const lrk_cochain* c, char** out) {
    return report(out, [&](bool&) {
        require(c, "cochain");
        return lrk::schema::cochain_to_json(c->c);
    });
}

lrk_status lrk_connection_get(const lrk_workspace* ws, const lrk_algebroid* a, const char* spec,
                              lrk_connection** out) {
    return guard([&] {
        require(a, "algebroid");
        require(spec, "connection name");
        require(out, "output pointer");
        lrk::Workspace empty;
        *out = new lrk_connection{(ws ? ws->ws : empty).connection(spec, a->a)};
    });
}

void lrk_connection_free(lrk_connection* c) { delete c; }

lrk_status lrk_ce_differential(const lrk_algebroid* a, const lrk_connection* conn_or_null, const lrk_cochain* c,
                               char** out) {
    return report(out, [&](bool&) {
        require(a, "algebroid");
        require(c, "cochain");
        const lrk::Cochain d = conn_or_null ? lrk::ce_differential(a->a, conn_or_null->c, c->c)
                                            : lrk::ce_differential(a->a, c->c);
        return result_json(d.to_string("dc"));
    });
}

lrk_status lrk_is_cocycle(const lrk_algebroid* a, const lrk_cochain* c, char** out) {
    return report(out, [&](bool& failed) {
        require(a, "algebroid");
        require(c, "cochain");
        const bool closed = lrk::is_cocycle(a->a, c->c);
        failed = !closed;
        return result_json(closed);
    });
}

lrk_status lrk_coboundary_solve(const lrk_algebroid* a, const lrk_cochain* omega1, const lrk_cochain* omega2,
                                int bound, char** out) {
    return report(out, [&](bool& failed) {
        require(a, "algebroid");
        require(omega1, "cochain");
        require(omega2, "cochain");
        std::optional<int> b;
        if (bound >= 0) b = bound;
        const auto rho = lrk::coboundary_solve(a->a, omega1->c, omega2->c, b);
        if (!rho) {
            failed = true;
            return result_json("none");
        }
        json j = result_json(rho->to_string("rho"));
        j["verified"] = true;
        return j;
    });
}

lrk_status lrk_cohomology_dim(const lrk_algebroid* a, size_t k, char** out) {
    return report(out, [&](bool&) {
        require(a, "algebroid");
        return result_json(lrk::lie_algebra_cohomology_dim(a->a, k));
    });
}

lrk_status lrk_curvature(const lrk_algebroid* a, const lrk_connection* conn, char** out) {
    return report(out, [&](bool&) {
        require(a, "algebroid");
        require(conn, "connection");
        json j = json::object();
        for (const auto& [ij, r] : lrk::curvature(a->a, conn->c)) {
            j["R(" + dname(ij.first) + "," + dname(ij.second) + ")"] = r.to_string();
        }
        return j;
    });
}

lrk_status lrk_curvature_type(const lrk_algebroid* a, const lrk_connection* conn, const lrk_cochain* omega,
                              char** out) {
    return report(out, [&](bool& failed) {
        require(a, "algebroid");
        require(conn, "connection");
        require(omega, "cochain");
        const bool matches = lrk::has_curvature_type(a->a, conn->c, omega->c);
        failed = !matches;
        return result_json(matches);
    });
}

// Enveloping algebras ----------------------------------------------------------

lrk_status lrk_presentation_new(const lrk_algebroid* a, const lrk_cochain* twist_or_null, int checked,
                                lrk_presentation** out) {
    return guard([&] {
        require(a, "algebroid");
        require(out, "output pointer");
        if (twist_or_null == nullptr) {
            *out = new lrk_presentation{lrk::UPresentation(a->a)};
        } else if (checked) {
            *out = new lrk_presentation{lrk::UPresentation(a->a, twist_or_null->c)};
        } else {
            *out = new lrk_presentation{lrk::UPresentation::unchecked(a->a, twist_or_null->c)};
        }
    });
}

void lrk_presentation_free(lrk_presentation* p) { delete p; }

lrk_status lrk_normal_form(const lrk_presentation* p, const char* element, char** out) {
    return report(out, [&](bool&) {
        require(p, "presentation");
        require(element, "element");
        return result_json(lrk::parse_uelement(element, p->p).to_string());
    });
}

lrk_status lrk_u_multiply(const lrk_presentation* p, const char* u, const char* v, char** out) {
    return report(out, [&](bool&) {
        require(p, "presentation");
        require(u, "element");
        require(v, "element");
        const auto x = lrk::parse_uelement(u, p->p);
        const auto y = lrk::parse_uelement(v, p->p);
        return result_json(lrk::u_mul(p->p, x, y).to_string());
    });
}

lrk_status lrk_u_commutator(const lrk_presentation* p, const char* u, const char* v, char** out) {
    return report(out, [&](bool&) {
        require(p, "presentation");
        require(u, "element");
        require(v, "element");
        const auto x = lrk::parse_uelement(u, p->p);
        const auto y = lrk::parse_uelement(v, p->p);
        return result_json(lrk::u_commutator(p->p, x, y).to_string());
    });
}

lrk_status lrk_principal_symbol(const lrk_presentation* p, const char* element, char** out) {
    return report(out, [&](bool&) {
        require(p, "presentation");
        require(element, "element");
        const auto u = lrk::parse_uelement(element, p->p);
        return result_json(lrk::principal_symbol(u).to_string());
    });
}

lrk_status lrk_symmetrize(const lrk_presentation* p, const char* symbol, char** out) {
    return report(out, [&](bool&) {
        require(p, "presentation");
        require(symbol, "symbol");
        const auto s = lrk::parse_symelement(symbol, p->p.rank(), p->p.nvars());
        return result_json(lrk::pbw_symmetrize(p->p, s).to_string());
    });
}

lrk_status lrk_associativity_probe(const lrk_presentation* p, size_t trials, uint64_t seed, unsigned max_degree,
                                   char** out) {
    return report(out, [&](bool& failed) {
        require(p, "presentation");
        const auto r = lrk::associativity_probe(p->p, trials, seed, max_degree);
        failed = !r.passed;
        json j{{"result", verdict(r.passed)}, {"trials", r.trials}};
        if (!r.passed) j["witness"] = r.witness;
        return j;
    });
}

lrk_status lrk_module_action(const lrk_presentation* p, const lrk_connection* conn, const char* element,
                             const char* section, char** out) {
    return report(out, [&](bool&) {
        require(p, "presentation");
        require(conn, "connection");
        require(element, "element");
        require(section, "section");
        const auto u = lrk::parse_uelement(element, p->p);
        const auto s = lrk::text::parse_section(section, p->p.nvars());
        return result_json(lrk::text::section_string(lrk::u_module_action(p->p, conn->c, u, s)));
    });
}

lrk_status lrk_induced_algebroid(const lrk_presentation* p, lrk_algebroid** out_algebroid, char** out) {
    return report(out, [&](bool& failed) {
        require(p, "presentation");
        lrk::LieRinehartAlgebra induced = lrk::induced_algebroid(p->p);
        const bool matches = induced == p->p.algebroid();
        failed = !matches;
        json j{{"result", matches ? "match" : "differs"}};
        const std::size_t r = induced.rank();
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t k = i + 1; k < r; ++k) {
                j["[" + dname(i) + "," + dname(k) + "]"] = induced.structure(i, k).to_string();
            }
        }
        for (std::size_t i = 0; i < r; ++i) j["a(" + dname(i) + ")"] = induced.anchor(i).to_string();
        if (out_algebroid) *out_algebroid = new lrk_algebroid{std::move(induced)};
        return j;
    });
}

lrk_status lrk_twist_isomorphism(const lrk_algebroid* a, const lrk_cochain* omega_from, const lrk_cochain* rho,
                                 const lrk_cochain* omega_to, size_t samples, uint64_t seed, char** out) {
    return report(out, [&](bool&) {
        require(a, "algebroid");
        require(omega_from, "cochain");
        require(rho, "cochain");
        require(omega_to, "cochain");
        if (rho->c.degree() != 1 || rho->c.coeff_rank() != 1) throw lrk::DimensionMismatch("rho must be a 1-cochain");
        std::vector<lrk::Poly> values;
        for (std::size_t i = 0; i < a->a.rank(); ++i) values.push_back(rho->c.scalar_value(std::vector{i}));
        const lrk::TwistIsomorphism iso(lrk::UPresentation(a->a, omega_from->c), std::move(values),
                                        lrk::UPresentation(a->a, omega_to->c), samples, seed);
        json j{{"result", "verified"}};
        const auto& images = iso.generator_images();
        for (std::size_t i = 0; i < images.size(); ++i) j["phi(" + dname(i) + ")"] = images[i].to_string();
        j["products_checked"] = iso.products_checked();
        return j;
    });
}

// Symmetric algebra -------------------------------------------------------------

lrk_status lrk_poisson_bracket(const lrk_algebroid* a, const char* s1, const char* s2, char** out) {
    return report(out, [&](bool&) {
        require(a, "algebroid");
        require(s1, "symbol");
        require(s2, "symbol");
        const auto x = lrk::parse_symelement(s1, a->a.rank(), a->a.nvars());
        const auto y = lrk::parse_symelement(s2, a->a.rank(), a->a.nvars());
        return result_json(lrk::poisson_bracket(a->a, x, y).to_string());
    });
}

lrk_status lrk_poisson_check(const lrk_algebroid* a, size_t trials, uint64_t seed, char** out) {
    return report(out, [&](bool& failed) {
        require(a, "algebroid");
        const auto r = lrk::check_poisson_axioms(a->a, trials, seed);
        failed = !r.passed;
        json j{{"result", verdict(r.passed)}, {"trials", r.trials}};
        if (!r.passed) j["witness"] = r.witness;
        return j;
    });
}

// Differential operators ---------------------------------------------------------

lrk_status lrk_operator_get(const lrk_workspace* ws, const char* spec, size_t nvars, lrk_operator** out) {
    return guard([&] {
        require(spec, "operator");
        require(out, "output pointer");
        lrk::Workspace empty;
        *out = new lrk_operator{(ws ? ws->ws : empty).op(spec, nvars)};
    });
}

void lrk_operator_free(lrk_operator* t) { delete t; }

size_t lrk_operator_nvars_hint(const lrk_workspace* ws, const char* spec) {
    if (spec == nullptr) return 1;
    lrk::Workspace empty;
    return (ws ? ws->ws : empty).infer_nvars(spec);
}

lrk_status lrk_operator_order(const lrk_operator* t, char** out) {
    return report(out, [&](bool&) {
        require(t, "operator");
        return result_json(lrk::op_order(t->t));
    });
}

lrk_status lrk_order_predicate(const lrk_operator* t, int n, char** out) {
    return report(out, [&](bool& failed) {
        require(t, "operator");
        if (n < 0) throw lrk::InvalidArgument("order bound must be >= 0");
        const bool holds = lrk::order_predicate(t->t, n);
        failed = !holds;
        json j = result_json(holds);
        j["order"] = lrk::op_order(t->t);
        return j;
    });
}

lrk_status lrk_operator_apply(const lrk_operator* t, const char* section, char** out) {
    return report(out, [&](bool&) {
        require(t, "operator");
        require(section, "section");
        const auto s = lrk::text::parse_section(section, t->t.nvars());
        return result_json(lrk::text::section_string(lrk::op_apply(t->t, s)));
    });
}

lrk_status lrk_scalar_symbol(const lrk_operator* t, char** out) {
    return report(out, [&](bool& failed) {
        require(t, "operator");
        const auto s = lrk::first_order_scalar_symbol(t->t);
        if (!s) {
            failed = true;
            return result_json("none");
        }
        json j;
        j["derivation"] = s->derivation.to_string();
        j["matrix"] = s->matrix_part.to_string();
        j["atiyah"] = lrk::to_atiyah_element(s->derivation, s->matrix_part).to_string();
        return j;
    });
}

lrk_status lrk_diff_qp_check(size_t m, size_t n, size_t trials, uint64_t seed, unsigned max_order, char** out) {
    return report(out, [&](bool& failed) {
        const auto r = lrk::diff_qp_check(m, n, trials, seed, max_order);
        failed = !r.passed;
        json j{{"result", verdict(r.passed)}, {"trials", r.trials}};
        if (!r.passed) j["witness"] = r.witness;
        return j;
    });
}

}  // extern "C"
