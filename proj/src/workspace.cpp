#include "lrkit/workspace.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "lrkit/errors.hpp"

namespace lrk {

namespace {

std::optional<std::size_t> parse_count(std::string_view s) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

bool looks_like_json(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    return b != std::string_view::npos && s[b] == '{';
}

void merge_section(const schema::json& j, const char* key, std::map<std::string, schema::json>& into) {
    if (!j.contains(key)) return;
    const auto& section = j.at(key);
    if (!section.is_object()) throw ParseError(std::string("'") + key + "' must be an object of named definitions");
    for (const auto& [name, def] : section.items()) {
        if (builtin_algebroid(name) || into.contains(name)) throw InvalidArgument("duplicate definition '" + name + "'");
        into[name] = def;
    }
}

Cochain constant_pair_cochain(const LieRinehartAlgebra& a) {
    if (a.rank() < 2) throw DimensionMismatch("sympl needs rank >= 2");
    Cochain c(2, a.rank(), a.nvars());
    c.set({0, 1}, Poly::constant(a.nvars(), 1));
    return c;
}

}  // namespace

std::optional<LieRinehartAlgebra> builtin_algebroid(std::string_view name) {
    auto after = [&](std::string_view prefix) -> std::optional<std::string_view> {
        if (name.substr(0, prefix.size()) == prefix) return name.substr(prefix.size());
        return std::nullopt;
    };
    if (name == "weyl") return tangent_algebroid(1);
    if (name == "heis") return heisenberg_algebra();
    if (name == "sl2") return sl2_algebra();
    if (name == "so3-poisson") return cotangent_poisson_algebroid(so3_bivector());
    if (auto rest = after("tangent:")) {
        if (auto n = parse_count(*rest)) return tangent_algebroid(*n);
    }
    if (auto rest = after("abelian:")) {
        if (auto n = parse_count(*rest)) return abelian_algebroid(*n);
    }
    if (auto rest = after("abelian")) {
        if (auto n = parse_count(*rest)) return abelian_algebroid(*n);
    }
    if (auto rest = after("atiyah:")) {
        const auto colon = rest->find(':');
        if (colon != std::string_view::npos) {
            auto m = parse_count(rest->substr(0, colon));
            auto n = parse_count(rest->substr(colon + 1));
            if (m && n) return atiyah_algebroid(*m, *n);
        }
    }
    return std::nullopt;
}

void Workspace::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    load_json(schema::parse_json(buf.str()), std::filesystem::path(path).stem().string());
}

void Workspace::load_json(const schema::json& j, const std::string& stem) {
    if (!j.is_object()) throw ParseError("definition file must hold a JSON object");
    if (j.contains("rank") && j.contains("nvars")) {
        schema::algebroid_from_json(j);
        if (algebroids_.contains(stem)) throw InvalidArgument("duplicate definition '" + stem + "'");
        algebroids_[stem] = j;
        return;
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "algebroids" && key != "cochains" && key != "connections" && key != "operators") {
            throw ParseError("unknown section '" + key + "'");
        }
    }
    merge_section(j, "algebroids", algebroids_);
    merge_section(j, "cochains", cochains_);
    merge_section(j, "connections", connections_);
    merge_section(j, "operators", operators_);
    for (const auto& [name, def] : algebroids_) schema::algebroid_from_json(def);
}

bool Workspace::is_algebroid(std::string_view spec) const {
    return builtin_algebroid(spec).has_value() || algebroids_.contains(std::string(spec));
}

LieRinehartAlgebra Workspace::algebroid(std::string_view spec) const {
    if (auto b = builtin_algebroid(spec)) return *b;
    if (auto it = algebroids_.find(std::string(spec)); it != algebroids_.end()) {
        return schema::algebroid_from_json(it->second);
    }
    if (looks_like_json(spec)) return schema::algebroid_from_json(schema::parse_json(spec));
    throw ParseError("unknown algebroid '" + std::string(spec) + "'");
}

Cochain Workspace::cochain(std::string_view spec, const LieRinehartAlgebra& a,
                           std::optional<std::size_t> degree) const {
    const std::string name(spec);
    Cochain c;
    if (name == "zero") {
        c = Cochain(degree.value_or(2), a.rank(), a.nvars());
    } else if (name == "sympl" || name == "e1e2") {
        c = constant_pair_cochain(a);
    } else if (name == "rho0") {
        if (a.rank() < 1 || a.nvars() < 2) throw DimensionMismatch("rho0 needs rank >= 1 and at least 2 variables");
        c = Cochain(1, a.rank(), a.nvars());
        c.set({0}, Poly::parse("-x2", a.nvars()));
    } else if (auto it = cochains_.find(name); it != cochains_.end()) {
        c = schema::cochain_from_json(it->second, a.rank(), a.nvars());
    } else if (looks_like_json(spec)) {
        c = schema::cochain_from_json(schema::parse_json(spec), a.rank(), a.nvars());
    } else if (spec.find('=') != std::string_view::npos || spec == "0") {
        const std::size_t d = spec == "0" ? degree.value_or(2) : schema::cochain_text_degree(spec);
        c = schema::cochain_from_text(spec, d, a.rank(), a.nvars());
    } else {
        throw ParseError("unknown cochain '" + name + "'");
    }
    if (degree && c.degree() != *degree) {
        throw DimensionMismatch("cochain '" + name + "' has degree " + std::to_string(c.degree()) + ", expected " +
                                std::to_string(*degree));
    }
    return c;
}

Connection Workspace::connection(std::string_view spec, const LieRinehartAlgebra& a) const {
    const std::string name(spec);
    Connection c;
    if (name == "trivial") {
        c = Connection::trivial(a);
    } else if (name == "connA") {
        if (a.rank() < 1 || a.nvars() < 2) throw DimensionMismatch("connA needs rank >= 1 and at least 2 variables");
        c = Connection::trivial(a);
        c.matrices[0].at(0, 0) = Poly::parse("-x2", a.nvars());
    } else if (auto it = connections_.find(name); it != connections_.end()) {
        c = schema::connection_from_json(it->second, a.rank(), a.nvars());
    } else if (looks_like_json(spec)) {
        c = schema::connection_from_json(schema::parse_json(spec), a.rank(), a.nvars());
    } else {
        throw ParseError("unknown connection '" + name + "'");
    }
    require_connection(a, c);
    return c;
}

OperatorElement Workspace::op(std::string_view spec, std::size_t nvars) const {
    if (auto it = operators_.find(std::string(spec)); it != operators_.end()) {
        return schema::operator_from_json(it->second, nvars);
    }
    if (looks_like_json(spec)) return schema::operator_from_json(schema::parse_json(spec), nvars);
    return parse_operator({{std::string(spec)}}, nvars);
}

std::size_t Workspace::infer_nvars(std::string_view spec) const {
    std::string body(spec);
    if (auto it = operators_.find(body); it != operators_.end()) body = it->second.dump();
    static const std::regex atom("[xd]([0-9]+)");
    std::size_t n = 1;
    for (std::sregex_iterator it(body.begin(), body.end(), atom), end; it != end; ++it) {
        n = std::max<std::size_t>(n, std::stoul((*it)[1].str()));
    }
    return n;
}

}  // namespace lrk
