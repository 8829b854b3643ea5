#include "lrkit/text.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lrkit/errors.hpp"

namespace lrk::text {

namespace {

class Parser {
public:
    Parser(std::string_view src, char gen_letter) : src_(src), gen_(gen_letter) {}

    Expr parse_all() {
        Expr e = parse_sum();
        skip_space();
        if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" +
                         std::string(src_) + "\"");
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool at_factor_start() {
        skip_space();
        if (pos_ >= src_.size()) return false;
        const char c = src_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'x' ||
               (gen_ != '\0' && c == gen_);
    }

    unsigned long read_digits() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        const std::string digits(src_.substr(start, pos_ - start));
        if (digits.size() > 9) fail("number too large for an index or exponent");
        return std::stoul(digits);
    }

    mpz_class read_integer() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return mpz_class(std::string(src_.substr(start, pos_ - start)));
    }

    Expr parse_sum() {
        Expr e;
        skip_space();
        bool negative = false;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
            negative = src_[pos_] == '-';
            ++pos_;
        }
        e.terms.push_back(parse_term(negative));
        for (;;) {
            skip_space();
            if (pos_ >= src_.size() || (src_[pos_] != '+' && src_[pos_] != '-')) break;
            negative = src_[pos_] == '-';
            ++pos_;
            e.terms.push_back(parse_term(negative));
        }
        return e;
    }

    Term parse_term(bool negative) {
        Term t;
        t.negative = negative;
        t.factors.push_back(parse_factor());
        for (;;) {
            skip_space();
            if (pos_ < src_.size() && src_[pos_] == '*') {
                ++pos_;
                t.factors.push_back(parse_factor());
            } else if (at_factor_start()) {
                t.factors.push_back(parse_factor());
            } else {
                break;
            }
        }
        return t;
    }

    unsigned parse_power() {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == '^') {
            ++pos_;
            skip_space();
            return static_cast<unsigned>(read_digits());
        }
        return 1;
    }

    Factor parse_factor() {
        skip_space();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        Factor f;
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            f.kind = Factor::Kind::Number;
            mpz_class num = read_integer();
            mpz_class den = 1;
            if (pos_ < src_.size() && src_[pos_] == '/') {
                ++pos_;
                den = read_integer();
                if (den == 0) fail("zero denominator");
            }
            f.number = Rational(num, den);
            f.number.canonicalize();
            return f;
        }
        if (c == '(') {
            ++pos_;
            auto inner = std::make_shared<Expr>(parse_sum());
            skip_space();
            if (pos_ >= src_.size() || src_[pos_] != ')') fail("expected ')'");
            ++pos_;
            f.kind = Factor::Kind::Group;
            f.group = std::move(inner);
            f.power = parse_power();
            return f;
        }
        if (c == 'x' || (gen_ != '\0' && c == gen_)) {
            ++pos_;
            const unsigned long idx = read_digits();
            if (idx == 0) fail("indices are one-based");
            f.kind = c == 'x' ? Factor::Kind::Var : Factor::Kind::Gen;
            f.index = idx - 1;
            f.power = parse_power();
            return f;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view src_;
    char gen_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text, char gen_letter) {
    return Parser(text, gen_letter).parse_all();
}

Poly to_poly(const Expr& expr, std::size_t nvars) {
    Poly sum(nvars);
    for (const auto& term : expr.terms) {
        Poly prod = Poly::constant(nvars, term.negative ? -1 : 1);
        for (const auto& f : term.factors) {
            switch (f.kind) {
                case Factor::Kind::Number:
                    prod *= f.number;
                    break;
                case Factor::Kind::Var: {
                    if (f.index >= nvars) {
                        throw ParseError("variable x" + std::to_string(f.index + 1) +
                                         " not in a ring with " + std::to_string(nvars) +
                                         " variables");
                    }
                    prod *= Poly::variable(nvars, f.index).pow(f.power);
                    break;
                }
                case Factor::Kind::Group:
                    prod *= to_poly(*f.group, nvars).pow(f.power);
                    break;
                case Factor::Kind::Gen:
                    throw ParseError("generator atom in a polynomial");
            }
        }
        sum += prod;
    }
    return sum;
}

std::string monomial_string(const Exponent& e, char letter) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += letter;
        out += std::to_string(i + 1);
        if (e[i] > 1) out += '^' + std::to_string(e[i]);
    }
    return out;
}

namespace {

std::string generator_string(const MultiIndex& beta, char letter) {
    std::string out;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (beta[i] == 0) continue;
        if (!out.empty()) out += ' ';
        out += letter;
        out += std::to_string(i + 1);
        if (beta[i] > 1) out += '^' + std::to_string(beta[i]);
    }
    return out;
}

}  // namespace

std::string graded_string(const std::map<MultiIndex, Poly>& terms, char letter) {
    struct Flat {
        const MultiIndex* beta;
        const Exponent* exp;
        const Rational* coeff;
    };
    std::vector<Flat> flat;
    for (const auto& [beta, poly] : terms) {
        for (const auto& [e, c] : poly.terms()) flat.push_back({&beta, &e, &c});
    }
    if (flat.empty()) return "0";
    std::sort(flat.begin(), flat.end(), [](const Flat& a, const Flat& b) {
        if (*a.beta != *b.beta) return graded_lex_less(*b.beta, *a.beta);
        return graded_lex_less(*b.exp, *a.exp);
    });

    std::ostringstream out;
    bool first = true;
    for (const auto& t : flat) {
        const bool negative = *t.coeff < 0;
        const Rational mag = negative ? Rational(-*t.coeff) : *t.coeff;
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> parts;
        const std::string xs = monomial_string(*t.exp, 'x');
        const std::string gs = generator_string(*t.beta, letter);
        if (mag != 1 || (xs.empty() && gs.empty())) parts.push_back(rational_to_string(mag));
        if (!xs.empty()) parts.push_back(xs);
        if (!gs.empty()) parts.push_back(gs);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out << '*';
            out << parts[i];
        }
    }
    return out.str();
}

std::string linear_string(const std::vector<Poly>& coords, char letter) {
    std::map<MultiIndex, Poly> terms;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        MultiIndex beta(coords.size(), 0);
        beta[i] = 1;
        terms.emplace(std::move(beta), coords[i]);
    }
    return graded_string(terms, letter);
}

std::string section_string(const std::vector<Poly>& section) {
    if (section.size() == 1) return section.front().to_string();
    std::string out = "(";
    for (std::size_t i = 0; i < section.size(); ++i) {
        if (i) out += ", ";
        out += section[i].to_string();
    }
    return out + ")";
}

std::vector<Poly> parse_section(std::string_view text, std::size_t nvars) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    std::string_view body = trim(text);
    // A parenthesised list is a tuple only if it contains a top-level comma.
    if (body.find(',') == std::string_view::npos) return {Poly::parse(body, nvars)};
    if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
        throw ParseError("section must be written as (p1, p2, ...)");
    }
    body = body.substr(1, body.size() - 2);
    std::vector<Poly> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
        if (i == body.size() || (body[i] == ',' && depth == 0)) {
            out.push_back(Poly::parse(trim(body.substr(start, i - start)), nvars));
            start = i + 1;
        } else if (body[i] == '(') {
            ++depth;
        } else if (body[i] == ')') {
            --depth;
        }
    }
    return out;
}

long generator_atom(std::string_view atom, char letter) {
    if (atom.size() < 2 || atom.front() != letter) return -1;
    long value = 0;
    for (std::size_t i = 1; i < atom.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(atom[i]))) return -1;
        value = value * 10 + (atom[i] - '0');
        if (value > 1'000'000) return -1;
    }
    return value == 0 ? -1 : value - 1;
}

}  // namespace lrk::text
