#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lrkit/cohomology.hpp"
#include "lrkit/graded.hpp"
#include "lrkit/lie_rinehart.hpp"
#include "lrkit/random.hpp"

namespace lrk {

/// A word in ring elements and basis generators, read left to right.
struct Atom {
    std::variant<Poly, std::size_t> value;  // Ring(f) or Gen(index)

    static Atom ring(Poly f) { return Atom{std::move(f)}; }
    static Atom gen(std::size_t index) { return Atom{index}; }
    bool is_gen() const { return std::holds_alternative<std::size_t>(value); }
};
using Word = std::vector<Atom>;

/// Presentation of the (twisted) enveloping algebra U(O, L, omega).
///
/// Generators are the ring O and the basis e_1..e_r of L subject to
///   e_i f - f e_i       = a(e_i)(f)
///   e_i e_j - e_j e_i   = [e_i, e_j] + omega(e_i, e_j).
/// Without a twist (or with omega = 0) this is the ordinary enveloping algebra.
///
/// Immutable once built.  An internal memo of generator-times-monomial
/// products is shared by copies and guarded by a mutex.
class UPresentation {
public:
    UPresentation() = default;
    explicit UPresentation(LieRinehartAlgebra algebroid);
    /// Throws PreconditionError if the twist is not a 2-cocycle.
    UPresentation(LieRinehartAlgebra algebroid, const Cochain& twist);

    /// Skips the cocycle check; the result may fail to be associative.
    static UPresentation unchecked(LieRinehartAlgebra algebroid, const Cochain& twist);

    const LieRinehartAlgebra& algebroid() const { return *algebroid_; }
    std::size_t rank() const { return algebroid_->rank(); }
    std::size_t nvars() const { return algebroid_->nvars(); }

    /// omega(e_i, e_j); zero when untwisted.
    const Poly& twist(std::size_t i, std::size_t j) const { return twist_.at(i * rank() + j); }
    /// The twist as a cochain (zero cochain when absent).
    Cochain twist_cochain() const;
    bool has_twist() const { return has_twist_; }

    UElement one() const { return UElement::one(rank(), nvars()); }
    UElement generator(std::size_t i) const { return UElement::generator(rank(), nvars(), i); }
    UElement scalar(const Poly& f) const { return UElement::scalar(rank(), f); }

    void require_element(const UElement& u) const;

    struct Cache;

private:
    UPresentation(LieRinehartAlgebra algebroid, const Cochain* twist, bool check);

    std::shared_ptr<const LieRinehartAlgebra> algebroid_;
    std::vector<Poly> twist_;  // dense r x r, antisymmetric
    bool has_twist_ = false;
    std::shared_ptr<Cache> cache_;

    friend class Straightener;
};

/// Unique PBW normal form of a word: ring coefficients on the left, basis
/// letters sorted ascending.
UElement u_normal_form(const UPresentation& p, const Word& w);
UElement u_mul(const UPresentation& p, const UElement& u, const UElement& v);
/// uv - vu.
UElement u_commutator(const UPresentation& p, const UElement& u, const UElement& v);

/// Max generator degree of u; 0 for nonzero ring elements, -1 for zero.
inline int filtration_degree(const UElement& u) { return u.degree(); }

/// Image of u in U_n / U_{n-1} = S^n L for n = filtration_degree(u).
/// Throws InvalidArgument for u = 0.
SymElement principal_symbol(const UElement& u);

/// (1/k!) sum over orderings of each symmetric monomial, with ring
/// coefficients kept on the left.
UElement pbw_symmetrize(const UPresentation& p, const SymElement& s);

/// Whitespace-separated atoms: "dK" or a polynomial.
Word parse_word(std::string_view text, const UPresentation& p);
/// Sum of words with '*' or whitespace between factors; each term is
/// multiplied in the order written and the result normalized.
UElement parse_uelement(std::string_view text, const UPresentation& p);

struct ProbeReport {
    bool passed = true;
    std::size_t trials = 0;
    std::string witness;
};

/// Random triples (u, v, w) checking (uv)w = u(vw), deg(uv) <= deg u + deg v
/// and deg[u, v] <= deg u + deg v - 1.  All generator triples are checked
/// first, then `trials` random ones.
ProbeReport associativity_probe(const UPresentation& p, std::size_t trials, std::uint64_t seed,
                                unsigned max_degree);

/// The Lie-Rinehart algebra (U_0, U_1 / U_0) of the filtered algebra: bracket
/// from commutators of generators modulo U_0, anchor from [e_i, x_k].
LieRinehartAlgebra induced_algebroid(const UPresentation& p);

/// Filtered isomorphism U(O, L, omega + d rho) -> U(O, L, omega) sending
/// e_i to e_i + rho(e_i) and fixing O.  Construction verifies the
/// coboundary condition and the homomorphism property.
class TwistIsomorphism {
public:
    /// Throws PreconditionError when omega_from - omega_to != d rho, and
    /// VerificationError if a checked product is not preserved.
    TwistIsomorphism(UPresentation from, std::vector<Poly> rho, UPresentation to,
                     std::size_t random_samples = 20, std::uint64_t seed = 1);

    UElement apply(const UElement& u) const;

    const std::vector<UElement>& generator_images() const { return images_; }
    std::size_t products_checked() const { return products_checked_; }
    const UPresentation& source() const { return from_; }
    const UPresentation& target() const { return to_; }

private:
    void verify(std::size_t random_samples, std::uint64_t seed);
    void check_pair(const UElement& u, const UElement& v);

    UPresentation from_;
    UPresentation to_;
    std::vector<Poly> rho_;
    std::vector<UElement> images_;
    std::size_t products_checked_ = 0;
};

/// Action of U(O, L, omega) on E = O^m through a connection of curvature
/// type omega: each PBW monomial f e^beta acts as f * nabla^beta.
/// Throws PreconditionError if the curvature type does not match.
std::vector<Poly> u_module_action(const UPresentation& p, const Connection& conn, const UElement& u,
                                  const std::vector<Poly>& s);

/// Random element with 1..max_terms terms of generator degree <= max_degree.
UElement random_uelement(Rng& rng, const UPresentation& p, unsigned max_degree, unsigned max_terms = 3);

}  // namespace lrk
