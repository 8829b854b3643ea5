#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lrkit/poly.hpp"

namespace lrk {

/// Element sum_i coords[i] * e_{i+1} of a free module of sections.
struct LElement {
    std::vector<Poly> coords;

    static LElement zero(std::size_t rank, std::size_t nvars);
    static LElement basis(std::size_t rank, std::size_t nvars, std::size_t index);

    std::size_t rank() const { return coords.size(); }
    bool is_zero() const;

    LElement& operator+=(const LElement& other);
    LElement& operator-=(const LElement& other);
    friend LElement operator+(LElement a, const LElement& b) { return a += b; }
    friend LElement operator-(LElement a, const LElement& b) { return a -= b; }
    friend LElement operator*(const Poly& f, LElement u);
    friend bool operator==(const LElement& a, const LElement& b) = default;

    std::string to_string() const;
};

/// A Lie-Rinehart algebra over Q[x1..xn] whose module of sections is free
/// of rank r.  Structure data: brackets [e_i, e_j] = sum_k c_ij^k e_k for
/// i < j, and the anchor derivation a(e_i) of every basis element.
///
/// Only pairs i < j are stored, so antisymmetry holds by construction.
/// With n = 0 the algebra is a finite-dimensional Lie algebra over Q.
class LieRinehartAlgebra {
public:
    LieRinehartAlgebra() = default;
    /// Abelian algebroid with zero anchor.
    LieRinehartAlgebra(std::size_t nvars, std::size_t rank);

    std::size_t nvars() const { return nvars_; }
    std::size_t rank() const { return rank_; }

    const std::vector<std::string>& basis_names() const { return names_; }
    void set_basis_names(std::vector<std::string> names);

    /// Sets [e_i, e_j]; for i > j the negation is stored under (j, i).
    void set_bracket(std::size_t i, std::size_t j, std::vector<Poly> coords);
    void set_anchor(std::size_t i, Derivation d);

    /// [e_i, e_j] with sign extension; zero on the diagonal.
    LElement structure(std::size_t i, std::size_t j) const;
    const Derivation& anchor(std::size_t i) const { return anchors_.at(i); }

    Poly zero_poly() const { return Poly(nvars_); }
    LElement zero_element() const { return LElement::zero(rank_, nvars_); }

    friend bool operator==(const LieRinehartAlgebra& a, const LieRinehartAlgebra& b) {
        return a.nvars_ == b.nvars_ && a.rank_ == b.rank_ && a.brackets_ == b.brackets_ &&
               a.anchors_ == b.anchors_;
    }

private:
    std::size_t pair_index(std::size_t i, std::size_t j) const;
    void check_index(std::size_t i) const;

    std::size_t nvars_ = 0;
    std::size_t rank_ = 0;
    std::vector<std::string> names_;
    std::vector<std::vector<Poly>> brackets_;  // upper triangle, row-major
    std::vector<Derivation> anchors_;
};

/// Leibniz-expanded bracket
/// [f e_i, g e_j] = fg [e_i, e_j] + f a_i(g) e_j - g a_j(f) e_i, extended bilinearly.
LElement bracket(const LieRinehartAlgebra& a, const LElement& u, const LElement& v);

/// The derivation a(u) = sum_i u_i a(e_i).
Derivation anchor_of(const LieRinehartAlgebra& a, const LElement& u);
Poly anchor_apply(const LieRinehartAlgebra& a, const LElement& u, const Poly& f);

struct AxiomCheck {
    bool passed = true;
    std::string witness;  // empty when passed
};

struct AxiomReport {
    AxiomCheck leibniz_consistent;
    AxiomCheck jacobi;
    AxiomCheck anchor_morphism;

    bool passed() const {
        return leibniz_consistent.passed && jacobi.passed && anchor_morphism.passed;
    }
};

/// Verifies the algebroid axioms on finite data: structural consistency and
/// the Leibniz rule on basis elements times ring generators, the Jacobi
/// identity on basis triples, and a([e_i, e_j]) = [a(e_i), a(e_j)] on every
/// ring generator.  Reports the first counterexample of each kind.
AxiomReport check_axioms(const LieRinehartAlgebra& a);

// Builtin constructors ------------------------------------------------------

/// Der(Q[x1..xn]) with basis d/dx_i.
LieRinehartAlgebra tangent_algebroid(std::size_t n);

/// Lie algebra Q^r with zero bracket and zero anchor over a point.
LieRinehartAlgebra abelian_algebroid(std::size_t rank, std::size_t nvars = 0);

/// Heisenberg Lie algebra over a point: [e1, e2] = e3.
LieRinehartAlgebra heisenberg_algebra();

/// sl2 with basis h, e, f over a point.
LieRinehartAlgebra sl2_algebra();

/// Cotangent algebroid of a bivector pi (n x n, antisymmetric): basis dx_i,
/// anchor a(dx_i) = sum_j pi_ij d/dx_j, bracket [dx_i, dx_j] = d(pi_ij).
/// Throws PreconditionError if pi is not antisymmetric.
LieRinehartAlgebra cotangent_poisson_algebroid(const std::vector<std::vector<Poly>>& pi);

/// The so(3) linear Poisson structure pi_12 = x3, pi_13 = -x2, pi_23 = x1.
std::vector<std::vector<Poly>> so3_bivector();

/// Atiyah algebroid of the trivial rank-m bundle over Q[x1..xn]: basis
/// E_pq (row-major, m^2 entries) followed by d/dx_i.
LieRinehartAlgebra atiyah_algebroid(std::size_t m, std::size_t n);

/// True iff f divides D(f), i.e. D preserves the principal ideal (f).
/// Throws InvalidArgument for f = 0.
bool log_derivation_member(const Poly& f, const Derivation& d);

}  // namespace lrk
