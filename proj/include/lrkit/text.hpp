#pragma once

// Shared text syntax: sums of products of rationals, ring variables xK,
// generator letters (dK / sK) and parenthesised groups.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lrkit/poly.hpp"

namespace lrk {

using MultiIndex = std::vector<std::uint32_t>;

namespace text {

struct Expr;

struct Factor {
    enum class Kind { Number, Var, Gen, Group };
    Kind kind = Kind::Number;
    Rational number;
    std::size_t index = 0;  // zero-based, for Var and Gen
    unsigned power = 1;
    std::shared_ptr<const Expr> group;
};

struct Term {
    bool negative = false;
    std::vector<Factor> factors;  // in written order
};

struct Expr {
    std::vector<Term> terms;
};

/// Parse a sum of products.  `gen_letter` is the letter accepted for
/// generator atoms ('d' or 's'); pass '\0' to accept ring variables only.
/// Factors are separated by '*' or whitespace.
Expr parse_expression(std::string_view text, char gen_letter);

/// Evaluate an expression containing no generator atoms.
Poly to_poly(const Expr& expr, std::size_t nvars);

/// "x1^2*x3" style rendering of an exponent vector; empty for the unit.
std::string monomial_string(const Exponent& e, char letter);

/// Printing of an element sum_beta coeff_beta * g^beta with g the letter
/// (d for enveloping elements, s for symbols).  Polynomial coefficients are
/// expanded so every printed term is a single rational * x-monomial *
/// generator monomial, ordered by generator degree, then generator
/// multi-index, then ring monomial, all descending.
std::string graded_string(const std::map<MultiIndex, Poly>& terms, char letter);

/// sum_i coords[i] * g_{i+1}.
std::string linear_string(const std::vector<Poly>& coords, char letter);

/// "(p1, p2, ...)" for a section of a free module; a rank-1 section prints
/// as its only entry.
std::string section_string(const std::vector<Poly>& section);
std::vector<Poly> parse_section(std::string_view text, std::size_t nvars);

/// Parse "dK" (one-based) to a zero-based index, or -1 if the atom is not
/// of that shape.
long generator_atom(std::string_view atom, char letter);

}  // namespace text
}  // namespace lrk
