// lrkit command-line front end.  Talks to the library only through lrkit.h.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrkit/lrkit.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
    std::string twist;
    std::string conn;
    int bound = -1;
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    unsigned max_order = 3;
    unsigned max_degree = 2;
    bool json = false;
    std::vector<std::string> files;
};

/// Non-OK status raised out of a command body.
struct Failure {
    lrk_status status;
    std::string message;
};

void ok(lrk_status s) {
    if (s != LRK_OK) throw Failure{s, lrk_last_error()};
}

template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(p); }
    T** out() { return &p; }
    operator T*() const { return p; }
};

using Workspace = Handle<lrk_workspace, lrk_workspace_free>;
using Algebroid = Handle<lrk_algebroid, lrk_algebroid_free>;
using Presentation = Handle<lrk_presentation, lrk_presentation_free>;
using CochainH = Handle<lrk_cochain, lrk_cochain_free>;
using ConnectionH = Handle<lrk_connection, lrk_connection_free>;
using OperatorH = Handle<lrk_operator, lrk_operator_free>;

/// Result of one library call: its status and report, if any.
struct Report {
    lrk_status status = LRK_OK;
    json body = json::object();
};

template <class F>
Report call(F&& f) {
    char* out = nullptr;
    Report r;
    r.status = f(&out);
    if (out != nullptr) {
        r.body = json::parse(out);
        lrk_string_free(out);
    }
    if (r.status != LRK_OK && r.status != LRK_CHECK_FAILED) throw Failure{r.status, lrk_last_error()};
    if (r.status == LRK_CHECK_FAILED && r.body.empty()) throw Failure{r.status, lrk_last_error()};
    return r;
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void print_text(const json& body) {
    if (body.contains("result")) std::cout << scalar_text(body.at("result")) << "\n";
    for (const auto& [key, value] : body.items()) {
        if (key == "result") continue;
        if (value.is_array()) {
            for (const auto& e : value) std::cout << key << " = " << scalar_text(e) << "\n";
        } else {
            std::cout << key << " = " << scalar_text(value) << "\n";
        }
    }
}

bool is_weyl_name(const std::string& s) { return s == "weyl" || s.rfind("tangent:", 0) == 0; }

class Runner {
public:
    explicit Runner(Options opt) : opt_(std::move(opt)) {
        ok(lrk_workspace_new(ws_.out()));
        for (const auto& f : opt_.files) ok(lrk_workspace_load_file(ws_, f.c_str()));
    }

    int emit(const Report& r) const {
        if (opt_.json) {
            std::cout << r.body.dump(2) << "\n";
        } else {
            print_text(r.body);
        }
        return r.status == LRK_OK ? kOk : kFailed;
    }

    void algebroid(const std::string& spec, Algebroid& a) { ok(lrk_algebroid_get(ws_, spec.c_str(), a.out())); }

    void cochain(const lrk_algebroid* a, const std::string& spec, int degree, CochainH& c) {
        ok(lrk_cochain_get(ws_, a, spec.c_str(), degree, c.out()));
    }

    void presentation(const lrk_algebroid* a, Presentation& p, bool checked = true) {
        if (opt_.twist.empty()) {
            ok(lrk_presentation_new(a, nullptr, 1, p.out()));
            return;
        }
        CochainH w;
        cochain(a, opt_.twist, 2, w);
        ok(lrk_presentation_new(a, w, checked ? 1 : 0, p.out()));
    }

    /// Splits an optional leading tangent:N / weyl argument off operator commands.
    std::size_t operator_nvars(std::vector<std::string>& args, std::size_t op_index) {
        if (!args.empty() && is_weyl_name(args.front()) && args.size() > op_index + 1) {
            Algebroid a;
            algebroid(args.front(), a);
            args.erase(args.begin());
            return lrk_algebroid_nvars(a);
        }
        return lrk_operator_nvars_hint(ws_, args.at(op_index).c_str());
    }

    int check(const std::vector<std::string>& args) {
        need(args, 1, 1, "check TARGET");
        const std::string& target = args[0];
        if (std::filesystem::is_regular_file(target)) {
            ok(lrk_workspace_load_file(ws_, target.c_str()));
            return emit(call([&](char** out) { return lrk_workspace_check(ws_, opt_.trials, opt_.seed, out); }));
        }
        Algebroid a;
        algebroid(target, a);
        Report total;
        Report axioms = call([&](char** out) { return lrk_check_axioms(a, out); });
        total.body["result"] = "pass";
        merge(total, axioms, "");
        if (axioms.status == LRK_OK) {
            merge(total, call([&](char** out) { return lrk_poisson_check(a, opt_.trials, opt_.seed, out); }),
                  "poisson");
            Presentation p;
            presentation(a, p, false);
            merge(total, call([&](char** out) {
                      return lrk_associativity_probe(p, opt_.trials, opt_.seed, opt_.max_degree, out);
                  }),
                  "associativity");
        }
        if (total.status != LRK_OK) total.body["result"] = "fail";
        return emit(total);
    }

    int nf(std::vector<std::string> args) {
        if (args.size() == 1) args.insert(args.begin(), "weyl");
        need(args, 2, 2, "nf [ALG] WORD");
        Algebroid a;
        algebroid(args[0], a);
        Presentation p;
        presentation(a, p);
        return emit(call([&](char** out) { return lrk_normal_form(p, args[1].c_str(), out); }));
    }

    int product(const std::vector<std::string>& args, bool commutator) {
        need(args, 3, 3, commutator ? "commutator ALG U V" : "mul ALG U V");
        Algebroid a;
        algebroid(args[0], a);
        Presentation p;
        presentation(a, p);
        return emit(call([&](char** out) {
            return commutator ? lrk_u_commutator(p, args[1].c_str(), args[2].c_str(), out)
                              : lrk_u_multiply(p, args[1].c_str(), args[2].c_str(), out);
        }));
    }

    int cohomology(const std::vector<std::string>& args) {
        need(args, 3, 4, "cohomology ALG {d C | cocycle C | solve W1 W2 | dim K}");
        Algebroid a;
        algebroid(args[0], a);
        const std::string& sub = args[1];
        if (sub == "d") {
            need(args, 3, 3, "cohomology ALG d C");
            CochainH c;
            cochain(a, args[2], -1, c);
            ConnectionH conn;
            if (!opt_.conn.empty()) ok(lrk_connection_get(ws_, a, opt_.conn.c_str(), conn.out()));
            return emit(call([&](char** out) { return lrk_ce_differential(a, conn, c, out); }));
        }
        if (sub == "cocycle") {
            need(args, 3, 3, "cohomology ALG cocycle C");
            CochainH c;
            cochain(a, args[2], -1, c);
            return emit(call([&](char** out) { return lrk_is_cocycle(a, c, out); }));
        }
        if (sub == "solve") {
            need(args, 4, 4, "cohomology ALG solve W1 W2");
            CochainH w1, w2;
            cochain(a, args[2], 2, w1);
            cochain(a, args[3], 2, w2);
            return emit(call([&](char** out) { return lrk_coboundary_solve(a, w1, w2, opt_.bound, out); }));
        }
        if (sub == "dim") {
            need(args, 3, 3, "cohomology ALG dim K");
            const std::size_t k = count(args[2]);
            return emit(call([&](char** out) { return lrk_cohomology_dim(a, k, out); }));
        }
        throw CLI::ValidationError("unknown cohomology subcommand '" + sub + "'");
    }

    int curvature(const std::vector<std::string>& args, bool typed) {
        need(args, typed ? 3 : 2, typed ? 3 : 2, typed ? "curvature-type ALG CONN W" : "curvature ALG CONN");
        Algebroid a;
        algebroid(args[0], a);
        ConnectionH conn;
        ok(lrk_connection_get(ws_, a, args[1].c_str(), conn.out()));
        if (!typed) return emit(call([&](char** out) { return lrk_curvature(a, conn, out); }));
        CochainH w;
        cochain(a, args[2], 2, w);
        return emit(call([&](char** out) { return lrk_curvature_type(a, conn, w, out); }));
    }

    int act(const std::vector<std::string>& args) {
        need(args, 4, 4, "act ALG CONN U SECTION");
        Algebroid a;
        algebroid(args[0], a);
        ConnectionH conn;
        ok(lrk_connection_get(ws_, a, args[1].c_str(), conn.out()));
        Presentation p;
        presentation(a, p);
        return emit(call([&](char** out) { return lrk_module_action(p, conn, args[2].c_str(), args[3].c_str(), out); }));
    }

    int symbol(const std::vector<std::string>& args, bool symmetrize) {
        need(args, 2, 2, symmetrize ? "symmetrize ALG S" : "symbol ALG U");
        Algebroid a;
        algebroid(args[0], a);
        Presentation p;
        presentation(a, p);
        return emit(call([&](char** out) {
            return symmetrize ? lrk_symmetrize(p, args[1].c_str(), out) : lrk_principal_symbol(p, args[1].c_str(), out);
        }));
    }

    int poisson(const std::vector<std::string>& args) {
        need(args, 1, 3, "poisson ALG [S1 S2]");
        Algebroid a;
        algebroid(args[0], a);
        if (args.size() == 1) {
            return emit(call([&](char** out) { return lrk_poisson_check(a, opt_.trials, opt_.seed, out); }));
        }
        need(args, 3, 3, "poisson ALG S1 S2");
        return emit(call([&](char** out) { return lrk_poisson_bracket(a, args[1].c_str(), args[2].c_str(), out); }));
    }

    int probe(const std::vector<std::string>& args) {
        need(args, 1, 1, "probe ALG");
        Algebroid a;
        algebroid(args[0], a);
        Presentation p;
        presentation(a, p, false);
        return emit(call([&](char** out) {
            return lrk_associativity_probe(p, opt_.trials, opt_.seed, opt_.max_degree, out);
        }));
    }

    int induced(const std::vector<std::string>& args) {
        need(args, 1, 1, "induced ALG");
        Algebroid a;
        algebroid(args[0], a);
        Presentation p;
        presentation(a, p);
        return emit(call([&](char** out) { return lrk_induced_algebroid(p, nullptr, out); }));
    }

    int twist_iso(std::vector<std::string> args) {
        if (args.size() == 3) args.insert(args.begin(), "tangent:2");
        need(args, 4, 4, "twist-iso [ALG] FROM RHO TO");
        Algebroid a;
        algebroid(args[0], a);
        CochainH from, rho, to;
        cochain(a, args[1], 2, from);
        cochain(a, args[2], 1, rho);
        cochain(a, args[3], 2, to);
        return emit(call([&](char** out) { return lrk_twist_isomorphism(a, from, rho, to, 20, opt_.seed, out); }));
    }

    int order(std::vector<std::string> args) {
        need(args, 1, 3, "order [tangent:N] OP [K]");
        const std::size_t n = operator_nvars(args, 0);
        need(args, 1, 2, "order [tangent:N] OP [K]");
        OperatorH t;
        ok(lrk_operator_get(ws_, args[0].c_str(), n, t.out()));
        if (args.size() == 2) {
            const int k = static_cast<int>(count(args[1]));
            return emit(call([&](char** out) { return lrk_order_predicate(t, k, out); }));
        }
        return emit(call([&](char** out) { return lrk_operator_order(t, out); }));
    }

    int apply(std::vector<std::string> args) {
        need(args, 2, 3, "apply [tangent:N] OP SECTION");
        const std::size_t n = operator_nvars(args, 0);
        need(args, 2, 2, "apply [tangent:N] OP SECTION");
        OperatorH t;
        ok(lrk_operator_get(ws_, args[0].c_str(), n, t.out()));
        return emit(call([&](char** out) { return lrk_operator_apply(t, args[1].c_str(), out); }));
    }

    int scalar_symbol(std::vector<std::string> args) {
        need(args, 1, 2, "scalar-symbol [tangent:N] OP");
        const std::size_t n = operator_nvars(args, 0);
        need(args, 1, 1, "scalar-symbol [tangent:N] OP");
        OperatorH t;
        ok(lrk_operator_get(ws_, args[0].c_str(), n, t.out()));
        return emit(call([&](char** out) { return lrk_scalar_symbol(t, out); }));
    }

    int diff_qp(const std::vector<std::string>& args) {
        need(args, 2, 2, "diff-qp M N");
        const std::size_t m = count(args[0]);
        const std::size_t n = count(args[1]);
        return emit(call([&](char** out) {
            return lrk_diff_qp_check(m, n, opt_.trials, opt_.seed, opt_.max_order, out);
        }));
    }

    int logmember(std::vector<std::string> args) {
        need(args, 2, 3, "logmember [ALG] F D");
        if (args.size() == 2) {
            const std::string both = args[0] + " " + args[1];
            args.insert(args.begin(), "tangent:" + std::to_string(lrk_operator_nvars_hint(ws_, both.c_str())));
        }
        Algebroid a;
        algebroid(args[0], a);
        return emit(call([&](char** out) { return lrk_log_member(a, args[1].c_str(), args[2].c_str(), out); }));
    }

private:
    static void need(const std::vector<std::string>& args, std::size_t lo, std::size_t hi, const char* usage) {
        if (args.size() < lo || args.size() > hi) throw CLI::ValidationError(std::string("usage: lrkit ") + usage);
    }

    static std::size_t count(const std::string& s) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s.size() || s.empty() || s[0] == '-') throw CLI::ValidationError("expected a count, got '" + s + "'");
        return v;
    }

    static void merge(Report& total, const Report& part, const std::string& prefix) {
        if (part.status != LRK_OK) total.status = part.status;
        for (const auto& [key, value] : part.body.items()) {
            if (key == "witness") {
                if (!total.body.contains("witness")) total.body["witness"] = json::array();
                if (value.is_array()) {
                    for (const auto& w : value) total.body["witness"].push_back(w);
                } else {
                    total.body["witness"].push_back(value);
                }
            } else if (key == "result") {
                if (!prefix.empty()) total.body[prefix] = value;
            } else if (prefix.empty()) {
                total.body[key] = value;
            }
        }
    }

    Options opt_;
    Workspace ws_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie-Rinehart algebras, enveloping algebras and differential operators"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--twist", opt.twist, "2-cocycle twisting the enveloping algebra");
    app.add_option("--conn", opt.conn, "connection for coefficients (cohomology d)");
    app.add_option("--bound", opt.bound, "polynomial degree bound for coboundary search");
    app.add_option("--seed", opt.seed, "seed for randomized checks");
    app.add_option("--trials", opt.trials, "random trials for randomized checks")->check(CLI::PositiveNumber);
    app.add_option("--max-order", opt.max_order, "largest operator order in diff-qp");
    app.add_option("--max-degree", opt.max_degree, "largest generator degree in associativity probes");
    app.add_flag("--json", opt.json, "emit JSON");
    app.add_option("--file", opt.files, "load definitions from a JSON workspace file");

    std::vector<std::string> args;
    struct Command {
        const char* name;
        const char* help;
    };
    const std::vector<Command> commands = {
        {"check", "check an algebroid (builtin name) or every definition in a file"},
        {"nf", "PBW normal form of a word"},
        {"mul", "product of two enveloping elements"},
        {"commutator", "commutator of two enveloping elements"},
        {"cohomology", "differential, cocycle test, coboundary search, Lie algebra cohomology"},
        {"curvature", "curvature of a connection"},
        {"curvature-type", "test whether a connection has curvature type W"},
        {"act", "action of an enveloping element on a section through a connection"},
        {"symbol", "principal symbol"},
        {"symmetrize", "PBW symmetrization of a symbol"},
        {"poisson", "Poisson bracket of two symbols, or the Poisson axiom check"},
        {"probe", "associativity probe of a (possibly unchecked) twisted presentation"},
        {"order", "order of a differential operator, or the order predicate"},
        {"apply", "apply a differential operator to a section"},
        {"scalar-symbol", "split a first-order operator as X * Id + A"},
        {"induced", "Lie-Rinehart algebra induced by the filtered enveloping algebra"},
        {"twist-iso", "verify the isomorphism of twisted enveloping algebras"},
        {"diff-qp", "quantum-Poisson check of Diff(O^m) over Q[x1..xn]"},
        {"logmember", "test whether a derivation preserves the principal ideal (f)"},
    };
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("args", args, "arguments");
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        Runner run(opt);
        if (cmd == "check") return run.check(args);
        if (cmd == "nf") return run.nf(args);
        if (cmd == "mul") return run.product(args, false);
        if (cmd == "commutator") return run.product(args, true);
        if (cmd == "cohomology") return run.cohomology(args);
        if (cmd == "curvature") return run.curvature(args, false);
        if (cmd == "curvature-type") return run.curvature(args, true);
        if (cmd == "act") return run.act(args);
        if (cmd == "symbol") return run.symbol(args, false);
        if (cmd == "symmetrize") return run.symbol(args, true);
        if (cmd == "poisson") return run.poisson(args);
        if (cmd == "probe") return run.probe(args);
        if (cmd == "order") return run.order(args);
        if (cmd == "apply") return run.apply(args);
        if (cmd == "scalar-symbol") return run.scalar_symbol(args);
        if (cmd == "induced") return run.induced(args);
        if (cmd == "twist-iso") return run.twist_iso(args);
        if (cmd == "diff-qp") return run.diff_qp(args);
        if (cmd == "logmember") return run.logmember(args);
    } catch (const Failure& f) {
        std::cerr << "error: " << lrk_status_name(f.status) << ": " << f.message << "\n";
        const bool math = f.status == LRK_CHECK_FAILED || f.status == LRK_PRECONDITION;
        return math ? kFailed : kUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
