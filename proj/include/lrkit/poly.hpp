#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lrk {

using Rational = mpq_class;
using Exponent = std::vector<std::uint32_t>;

/// Exact multivariate polynomial over the rationals in variables x1..xn.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored,
/// so two equal polynomials always have identical term maps.  The zero
/// polynomial is the empty map.
class Poly {
public:
    using TermMap = std::map<Exponent, Rational>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Rational& c);
    /// x_{index+1}, zero-based index.
    static Poly variable(std::size_t nvars, std::size_t index);
    static Poly monomial(Exponent exponent, const Rational& c);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// -1 for the zero polynomial.
    int total_degree() const;
    Rational coefficient(const Exponent& exponent) const;
    /// Constant term.
    Rational constant_term() const;

    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    Poly& operator*=(const Poly& other);
    Poly& operator*=(const Rational& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    Poly operator-() const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Partial derivative with respect to x_{index+1}.
    Poly partial(std::size_t index) const;
    Poly pow(unsigned e) const;

    /// Quotient q with *this == q * divisor, or nullopt when the division
    /// leaves a remainder.  Throws InvalidArgument on a zero divisor.
    std::optional<Poly> divide_exact(const Poly& divisor) const;

    /// Canonical text, e.g. "x1^2 + 2*x1*x2 - 1/2".
    std::string to_string() const;
    static Poly parse(std::string_view text, std::size_t nvars);

    /// Add c * x^exponent in place.
    void add_term(const Exponent& exponent, const Rational& c);

private:
    void require_same_ring(const Poly& other) const;

    std::size_t nvars_ = 0;
    TermMap terms_;
};

/// Graded-lex comparison: total degree first, then lexicographic with x1 largest.
bool graded_lex_less(const Exponent& a, const Exponent& b);

std::string rational_to_string(const Rational& q);

/// A derivation sum_i coeffs[i] * d/dx_{i+1} of Q[x1..xn].
class Derivation {
public:
    Derivation() = default;
    explicit Derivation(std::size_t nvars);
    explicit Derivation(std::vector<Poly> coeffs);

    /// d/dx_{index+1}.
    static Derivation partial(std::size_t nvars, std::size_t index);

    std::size_t nvars() const { return coeffs_.size(); }
    const std::vector<Poly>& coeffs() const { return coeffs_; }
    const Poly& coeff(std::size_t i) const { return coeffs_.at(i); }
    bool is_zero() const;

    Poly apply(const Poly& f) const;

    Derivation& operator+=(const Derivation& other);
    Derivation& operator-=(const Derivation& other);
    friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
    friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
    /// f * D.
    friend Derivation operator*(const Poly& f, const Derivation& d);
    friend bool operator==(const Derivation& a, const Derivation& b) = default;

    std::string to_string() const;

private:
    std::vector<Poly> coeffs_;
};

/// Commutator [D1, D2] = D1 D2 - D2 D1 as a derivation.
Derivation derivation_bracket(const Derivation& d1, const Derivation& d2);

}  // namespace lrk
