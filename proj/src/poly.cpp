#include "lrkit/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lrkit/errors.hpp"
#include "lrkit/text.hpp"

namespace lrk {

namespace {

unsigned degree_of(const Exponent& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

bool divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

}  // namespace

bool graded_lex_less(const Exponent& a, const Exponent& b) {
    const unsigned da = degree_of(a);
    const unsigned db = degree_of(b);
    if (da != db) return da < db;
    return a < b;
}

std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) {
        throw InvalidArgument("variable index x" + std::to_string(index + 1) +
                              " out of range for " + std::to_string(nvars) + " variables");
    }
    Exponent e(nvars, 0);
    e[index] = 1;
    return monomial(std::move(e), Rational(1));
}

Poly Poly::monomial(Exponent exponent, const Rational& c) {
    Poly p(exponent.size());
    p.add_term(exponent, c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(degree_of(e)));
    return d;
}

Rational Poly::coefficient(const Exponent& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Poly::constant_term() const {
    return coefficient(Exponent(nvars_, 0));
}

void Poly::add_term(const Exponent& exponent, const Rational& c) {
    if (exponent.size() != nvars_) {
        throw DimensionMismatch("exponent length " + std::to_string(exponent.size()) +
                                " does not match " + std::to_string(nvars_) + " variables");
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Poly::require_same_ring(const Poly& other) const {
    if (nvars_ != other.nvars_) {
        throw DimensionMismatch("polynomials over " + std::to_string(nvars_) + " and " +
                                std::to_string(other.nvars_) + " variables");
    }
}

Poly& Poly::operator+=(const Poly& other) {
    require_same_ring(other);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    require_same_ring(other);
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.require_same_ring(b);
    Poly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Poly& Poly::operator*=(const Poly& other) {
    *this = *this * other;
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
    return *this;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Poly Poly::partial(std::size_t index) const {
    if (index >= nvars_) {
        throw InvalidArgument("partial derivative index out of range");
    }
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0) continue;
        Exponent d = e;
        d[index] -= 1;
        out.add_term(d, c * e[index]);
    }
    return out;
}

Poly Poly::pow(unsigned e) const {
    Poly out = constant(nvars_, 1);
    for (unsigned i = 0; i < e; ++i) out *= *this;
    return out;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
    require_same_ring(divisor);
    if (divisor.is_zero()) throw InvalidArgument("division by the zero polynomial");

    // A single polynomial is a Groebner basis of the ideal it generates, so
    // reduction by leading terms leaves remainder zero iff it divides.
    auto leading = [](const Poly& p) {
        return *std::max_element(p.terms_.begin(), p.terms_.end(),
                                 [](const auto& a, const auto& b) {
                                     return graded_lex_less(a.first, b.first);
                                 });
    };
    const auto [lead_exp, lead_coeff] = leading(divisor);

    Poly remainder = *this;
    Poly quotient(nvars_);
    while (!remainder.is_zero()) {
        const auto [e, c] = leading(remainder);
        if (!divides(lead_exp, e)) return std::nullopt;
        Exponent q(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) q[i] = e[i] - lead_exp[i];
        const Poly step = monomial(q, c / lead_coeff);
        quotient += step;
        remainder -= step * divisor;
    }
    return quotient;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const TermMap::value_type*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        return graded_lex_less(b->first, a->first);
    });

    std::ostringstream out;
    bool first = true;
    for (const auto* t : order) {
        const auto& [e, c] = *t;
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        const std::string mono = text::monomial_string(e, 'x');
        if (mono.empty()) {
            out << rational_to_string(mag);
        } else if (mag == 1) {
            out << mono;
        } else {
            out << rational_to_string(mag) << '*' << mono;
        }
    }
    return out.str();
}

Poly Poly::parse(std::string_view text, std::size_t nvars) {
    return text::to_poly(text::parse_expression(text, '\0'), nvars);
}

// ---------------------------------------------------------------------------

Derivation::Derivation(std::size_t nvars) : coeffs_(nvars, Poly(nvars)) {}

Derivation::Derivation(std::vector<Poly> coeffs) : coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
        if (c.nvars() != coeffs_.size()) {
            throw DimensionMismatch("derivation coefficient ring does not match its length");
        }
    }
}

Derivation Derivation::partial(std::size_t nvars, std::size_t index) {
    Derivation d(nvars);
    d.coeffs_.at(index) = Poly::constant(nvars, 1);
    return d;
}

bool Derivation::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Poly& p) { return p.is_zero(); });
}

Poly Derivation::apply(const Poly& f) const {
    if (f.nvars() != nvars()) {
        throw DimensionMismatch("derivation over " + std::to_string(nvars()) +
                                " variables applied to polynomial over " +
                                std::to_string(f.nvars()));
    }
    Poly out(nvars());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        out += coeffs_[i] * f.partial(i);
    }
    return out;
}

Derivation& Derivation::operator+=(const Derivation& other) {
    if (other.nvars() != nvars()) throw DimensionMismatch("derivation size mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

Derivation& Derivation::operator-=(const Derivation& other) {
    if (other.nvars() != nvars()) throw DimensionMismatch("derivation size mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

Derivation operator*(const Poly& f, const Derivation& d) {
    if (f.nvars() != d.nvars()) throw DimensionMismatch("derivation size mismatch");
    Derivation out = d;
    for (auto& c : out.coeffs_) c = f * c;
    return out;
}

std::string Derivation::to_string() const {
    std::vector<Poly> coords = coeffs_;
    return text::linear_string(coords, 'd');
}

Derivation derivation_bracket(const Derivation& d1, const Derivation& d2) {
    if (d1.nvars() != d2.nvars()) throw DimensionMismatch("derivation size mismatch");
    std::vector<Poly> out;
    out.reserve(d1.nvars());
    for (std::size_t i = 0; i < d1.nvars(); ++i) {
        out.push_back(d1.apply(d2.coeff(i)) - d2.apply(d1.coeff(i)));
    }
    return Derivation(std::move(out));
}

}  // namespace lrk
