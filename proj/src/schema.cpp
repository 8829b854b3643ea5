#include "lrkit/schema.hpp"

#include <sstream>

#include "lrkit/errors.hpp"
#include "lrkit/text.hpp"

namespace lrk::schema {

namespace {

Poly poly_of(const json& j, std::size_t nvars) {
    if (j.is_number_integer()) return Poly::constant(nvars, Rational(j.get<long>()));
    if (!j.is_string()) throw ParseError("expected a polynomial string, got " + j.dump());
    return Poly::parse(j.get<std::string>(), nvars);
}

std::vector<Poly> polys_of(const json& j, std::size_t nvars, std::size_t expected, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    if (j.size() != expected) {
        throw DimensionMismatch(std::string(what) + " has " + std::to_string(j.size()) + " entries, expected " +
                                std::to_string(expected));
    }
    std::vector<Poly> out;
    for (const auto& e : j) out.push_back(poly_of(e, nvars));
    return out;
}

json strings_of(const std::vector<Poly>& ps) {
    json arr = json::array();
    for (const auto& p : ps) arr.push_back(p.to_string());
    return arr;
}

std::size_t index_of(const json& j, std::size_t bound, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    const long v = j.get<long>();
    if (v < 1 || static_cast<std::size_t>(v) > bound) {
        throw DimensionMismatch(std::string(what) + " " + std::to_string(v) + " out of range 1.." +
                                std::to_string(bound));
    }
    return static_cast<std::size_t>(v - 1);
}

std::size_t count_of(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long>() < 0) {
        throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

/// Splits "name(d1,d2) = value" into the index tuple and the value text.
std::pair<std::vector<std::size_t>, std::string> split_line(const std::string& line) {
    const auto open = line.find('(');
    const auto close = line.find(')', open == std::string::npos ? 0 : open);
    const auto eq = line.find('=', close == std::string::npos ? 0 : close);
    if (open == std::string::npos || close == std::string::npos || eq == std::string::npos) {
        throw ParseError("expected 'name(d1,...) = value', got '" + line + "'");
    }
    std::vector<std::size_t> idx;
    std::stringstream args(line.substr(open + 1, close - open - 1));
    std::string atom;
    while (std::getline(args, atom, ',')) {
        const long k = text::generator_atom(trim(atom), 'd');
        if (k < 0) throw ParseError("bad cochain argument '" + trim(atom) + "'");
        idx.push_back(static_cast<std::size_t>(k));
    }
    return {idx, trim(std::string_view(line).substr(eq + 1))};
}

std::vector<std::string> lines_of(std::string_view text) {
    std::vector<std::string> out;
    std::stringstream ss{std::string(text)};
    std::string line;
    // ';' also separates entries so a cochain fits on one command line
    while (std::getline(ss, line)) {
        std::stringstream ps(line);
        std::string piece;
        while (std::getline(ps, piece, ';')) {
            if (!trim(piece).empty()) out.push_back(trim(piece));
        }
    }
    return out;
}

}  // namespace

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

LieRinehartAlgebra algebroid_from_json(const json& j) {
    try {
        const std::size_t n = count_of(j, "nvars");
        const std::size_t r = count_of(j, "rank");
        LieRinehartAlgebra a(n, r);
        if (j.contains("basis_names")) {
            const auto& names = j.at("basis_names");
            if (!names.is_array() || names.size() != r) throw DimensionMismatch("basis_names must have rank entries");
            a.set_basis_names(names.get<std::vector<std::string>>());
        }
        if (j.contains("brackets")) {
            for (const auto& b : j.at("brackets")) {
                const std::size_t i = index_of(b.at("i"), r, "bracket index i");
                const std::size_t k = index_of(b.at("j"), r, "bracket index j");
                a.set_bracket(i, k, polys_of(b.at("coords"), n, r, "bracket coords"));
            }
        }
        if (j.contains("anchors")) {
            const auto& anchors = j.at("anchors");
            if (!anchors.is_array() || anchors.size() != r) throw DimensionMismatch("anchors must have rank entries");
            for (std::size_t i = 0; i < r; ++i) a.set_anchor(i, Derivation(polys_of(anchors[i], n, n, "anchor")));
        }
        return a;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad algebroid definition: ") + e.what());
    }
}

json algebroid_to_json(const LieRinehartAlgebra& a) {
    json j;
    j["nvars"] = a.nvars();
    j["rank"] = a.rank();
    j["basis_names"] = a.basis_names();
    json brackets = json::array();
    for (std::size_t i = 0; i < a.rank(); ++i) {
        for (std::size_t k = i + 1; k < a.rank(); ++k) {
            const LElement s = a.structure(i, k);
            if (s.is_zero()) continue;
            brackets.push_back({{"i", i + 1}, {"j", k + 1}, {"coords", strings_of(s.coords)}});
        }
    }
    j["brackets"] = brackets;
    json anchors = json::array();
    for (std::size_t i = 0; i < a.rank(); ++i) anchors.push_back(strings_of(a.anchor(i).coeffs()));
    j["anchors"] = anchors;
    return j;
}

Cochain cochain_from_json(const json& j, std::size_t rank, std::size_t nvars) {
    try {
        const std::size_t degree = count_of(j, "degree");
        const std::size_t m = j.contains("coeff_rank") ? count_of(j, "coeff_rank") : 1;
        Cochain c(degree, rank, nvars, m);
        if (j.contains("entries")) {
            for (const auto& e : j.at("entries")) {
                std::vector<std::size_t> idx;
                for (const auto& i : e.at("indices")) idx.push_back(index_of(i, rank, "cochain index"));
                if (idx.size() != degree) throw DimensionMismatch("cochain entry has the wrong number of indices");
                const json& v = e.at("value");
                c.set(idx, v.is_array() ? polys_of(v, nvars, m, "cochain value")
                                        : std::vector<Poly>{poly_of(v, nvars)});
            }
        }
        return c;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad cochain definition: ") + e.what());
    }
}

json cochain_to_json(const Cochain& c) {
    json j;
    j["degree"] = c.degree();
    j["coeff_rank"] = c.coeff_rank();
    json entries = json::array();
    for (const auto& [idx, v] : c.entries()) {
        json indices = json::array();
        for (auto i : idx) indices.push_back(i + 1);
        entries.push_back({{"indices", indices}, {"value", strings_of(v)}});
    }
    j["entries"] = entries;
    return j;
}

std::size_t cochain_text_degree(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw ParseError("empty cochain text");
    if (lines.front() == "0") throw ParseError("degree of the zero cochain text is ambiguous");
    return split_line(lines.front()).first.size();
}

Cochain cochain_from_text(std::string_view text, std::size_t degree, std::size_t rank, std::size_t nvars) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw ParseError("empty cochain text");
    std::size_t m = 0;
    std::vector<std::pair<std::vector<std::size_t>, std::vector<Poly>>> entries;
    for (const auto& line : lines) {
        if (line == "0") continue;
        auto [idx, value] = split_line(line);
        if (idx.size() != degree) throw DimensionMismatch("cochain line '" + line + "' has the wrong arity");
        for (auto i : idx) {
            if (i >= rank) throw DimensionMismatch("cochain argument d" + std::to_string(i + 1) + " out of range");
        }
        auto v = text::parse_section(value, nvars);
        if (m != 0 && v.size() != m) throw DimensionMismatch("cochain values have different ranks");
        m = v.size();
        entries.emplace_back(std::move(idx), std::move(v));
    }
    Cochain c(degree, rank, nvars, m == 0 ? 1 : m);
    for (auto& [idx, v] : entries) c.set(idx, v);
    return c;
}

Connection connection_from_json(const json& j, std::size_t rank, std::size_t nvars) {
    try {
        Connection c;
        c.rank = count_of(j, "rank");
        const auto& mats = j.at("matrices");
        if (!mats.is_array() || mats.size() != rank) {
            throw DimensionMismatch("connection needs one matrix per basis element (" + std::to_string(rank) + ")");
        }
        for (const auto& mj : mats) {
            PolyMatrix a(c.rank, nvars);
            if (!mj.is_array() || mj.size() != c.rank) throw DimensionMismatch("connection matrix has the wrong size");
            for (std::size_t r = 0; r < c.rank; ++r) {
                const auto row = polys_of(mj[r], nvars, c.rank, "connection matrix row");
                for (std::size_t k = 0; k < c.rank; ++k) a.at(r, k) = row[k];
            }
            c.matrices.push_back(std::move(a));
        }
        return c;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad connection definition: ") + e.what());
    }
}

json connection_to_json(const Connection& c) {
    json mats = json::array();
    for (const auto& a : c.matrices) {
        json mj = json::array();
        for (std::size_t r = 0; r < a.size(); ++r) {
            json row = json::array();
            for (std::size_t k = 0; k < a.size(); ++k) row.push_back(a.at(r, k).to_string());
            mj.push_back(row);
        }
        mats.push_back(mj);
    }
    return {{"rank", c.rank}, {"matrices", mats}};
}

OperatorElement operator_from_json(const json& j, std::size_t nvars) {
    try {
        const std::size_t m = count_of(j, "rank");
        const auto& rows = j.at("entries");
        if (!rows.is_array() || rows.size() != m) throw DimensionMismatch("operator needs rank rows");
        std::vector<std::vector<std::string>> entries;
        for (const auto& row : rows) {
            if (!row.is_array()) throw ParseError("operator rows must be arrays");
            std::vector<std::string> r;
            for (const auto& e : row) {
                if (e.is_number_integer()) r.push_back(std::to_string(e.get<long>()));
                else r.push_back(e.get<std::string>());
            }
            entries.push_back(std::move(r));
        }
        return parse_operator(entries, nvars);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad operator definition: ") + e.what());
    }
}

json operator_to_json(const OperatorElement& t) {
    json rows = json::array();
    for (std::size_t r = 0; r < t.rank(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < t.rank(); ++c) row.push_back(t.at(r, c).to_string());
        rows.push_back(row);
    }
    return {{"rank", t.rank()}, {"entries", rows}};
}

}  // namespace lrk::schema
