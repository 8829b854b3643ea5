#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrkit/cohomology.hpp"
#include "lrkit/enveloping.hpp"

namespace lrk {

/// Shared presentation of U(tangent:n); its normal forms are the Weyl
/// normal forms sum f * d^alpha.
const UPresentation& weyl_presentation(std::size_t nvars);

/// Action of a Weyl-normal-form element on a polynomial.
Poly weyl_apply(const UElement& u, const Poly& g);

/// Differential operator on E = O^m: an m x m matrix of Weyl elements.
class OperatorElement {
public:
    OperatorElement() = default;
    OperatorElement(std::size_t m, std::size_t nvars);

    static OperatorElement identity(std::size_t m, std::size_t nvars);
    /// u * Id.
    static OperatorElement scalar(std::size_t m, const UElement& u);
    static OperatorElement from_matrix(const PolyMatrix& a);

    std::size_t rank() const { return m_; }
    std::size_t nvars() const { return nvars_; }
    const UElement& at(std::size_t r, std::size_t c) const { return entries_.at(r * m_ + c); }
    void set(std::size_t r, std::size_t c, UElement u);
    bool is_zero() const;

    OperatorElement& operator+=(const OperatorElement& o);
    OperatorElement& operator-=(const OperatorElement& o);
    friend OperatorElement operator+(OperatorElement a, const OperatorElement& b) { return a += b; }
    friend OperatorElement operator-(OperatorElement a, const OperatorElement& b) { return a -= b; }
    /// Composition.
    friend OperatorElement operator*(const OperatorElement& a, const OperatorElement& b);
    friend bool operator==(const OperatorElement& a, const OperatorElement& b) = default;

    /// Entries of generator degree exactly d.
    OperatorElement homogeneous_part(int d) const;

    /// A 1x1 operator prints as its entry, otherwise "[[a, b], [c, d]]".
    std::string to_string() const;

private:
    void require_compatible(const OperatorElement& o) const;

    std::size_t m_ = 0;
    std::size_t nvars_ = 0;
    std::vector<UElement> entries_;
};

OperatorElement op_commutator(const OperatorElement& a, const OperatorElement& b);

std::vector<Poly> op_apply(const OperatorElement& t, const std::vector<Poly>& s);

/// Largest total d-degree among entries; -1 for the zero operator.
int op_order(const OperatorElement& t);

/// Inductive order test: order <= 0 iff T commutes with every x_i * Id, and
/// order <= n iff every [T, x_i * Id] has order <= n - 1.  Generators suffice
/// because [T, fg] = [T, f] g + f [T, g].
bool order_predicate(const OperatorElement& t, int n);

struct DiffQpReport {
    bool passed = true;
    std::size_t trials = 0;
    std::string witness;
};

/// Random checks of Diff^i Diff^j in Diff^{i+j}, [D D', f] = D [D', f] +
/// [D, f] D' and [Diff^i, Diff^j] in Diff^{i+j-1}.  For m >= 2 the
/// commutator bound only holds when the top-order parts are scalar, so the
/// commutator pairs are drawn with scalar leading part.
DiffQpReport diff_qp_check(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed,
                           unsigned max_order);

struct ScalarSymbol {
    Derivation derivation;
    PolyMatrix matrix_part;
};

/// Splits T = X * Id + A when T has order <= 1 and its first-order part is
/// scalar; none otherwise.  Throws PreconditionError if T has order >= 2.
std::optional<ScalarSymbol> first_order_scalar_symbol(const OperatorElement& t);

/// X * Id + A.
OperatorElement scalar_symbol_operator(const Derivation& x, const PolyMatrix& a);

/// Coordinates in atiyah_algebroid(m, n): E_pq row-major, then d_i.
LElement to_atiyah_element(const Derivation& x, const PolyMatrix& a);
ScalarSymbol from_atiyah_element(const LElement& e, std::size_t m, std::size_t n);

/// Operator with given order: leading part of that degree on every entry,
/// or u * Id when scalar_top, plus random lower-order entries.
OperatorElement random_operator(Rng& rng, std::size_t m, std::size_t n, unsigned order, bool scalar_top);

/// Entries in Weyl syntax, row-major; throws ParseError or DimensionMismatch.
OperatorElement parse_operator(const std::vector<std::vector<std::string>>& entries, std::size_t nvars);

}  // namespace lrk
