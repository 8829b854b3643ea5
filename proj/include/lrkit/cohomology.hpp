#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrkit/lie_rinehart.hpp"
#include "lrkit/poly.hpp"

namespace lrk {

/// Dense square matrix of polynomials (endomorphism of O^m).
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t m, std::size_t nvars);

    static PolyMatrix identity(std::size_t m, std::size_t nvars);
    static PolyMatrix scalar(std::size_t m, const Poly& f);

    std::size_t size() const { return m_; }
    std::size_t nvars() const { return nvars_; }
    Poly& at(std::size_t r, std::size_t c) { return data_.at(r * m_ + c); }
    const Poly& at(std::size_t r, std::size_t c) const { return data_.at(r * m_ + c); }
    bool is_zero() const;

    PolyMatrix& operator+=(const PolyMatrix& o);
    PolyMatrix& operator-=(const PolyMatrix& o);
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const Poly& f, PolyMatrix a);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

    std::vector<Poly> apply(const std::vector<Poly>& s) const;
    /// Derivation applied entrywise.
    PolyMatrix differentiate(const Derivation& d) const;

    /// "[[p11, p12], [p21, p22]]"; a 1x1 matrix prints as its entry.
    std::string to_string() const;

private:
    std::size_t m_ = 0;
    std::size_t nvars_ = 0;
    std::vector<Poly> data_;
};

/// Alternating k-cochain on a rank-r algebroid with values in O^m.
/// Only strictly increasing index tuples are stored; evaluation on other
/// tuples is sign-extended and vanishes on repeated indices.
class Cochain {
public:
    using Indices = std::vector<std::size_t>;

    Cochain() = default;
    Cochain(std::size_t degree, std::size_t rank, std::size_t nvars, std::size_t coeff_rank = 1);

    std::size_t degree() const { return degree_; }
    std::size_t rank() const { return rank_; }
    std::size_t nvars() const { return nvars_; }
    std::size_t coeff_rank() const { return coeff_rank_; }
    const std::map<Indices, std::vector<Poly>>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    /// Assigns the value on the tuple (any order; sorted with sign).
    void set(Indices indices, std::vector<Poly> value);
    void set(Indices indices, const Poly& value) { set(std::move(indices), std::vector<Poly>{value}); }

    std::vector<Poly> value(std::span<const std::size_t> indices) const;
    Poly scalar_value(std::span<const std::size_t> indices) const { return value(indices).at(0); }

    /// Largest total degree among coefficients; -1 when zero.
    int max_poly_degree() const;

    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend bool operator==(const Cochain& a, const Cochain& b) = default;

    /// One line per nonzero entry: "w(d1,d2) = value".
    std::string to_string(const std::string& name = "w") const;

private:
    void require_compatible(const Cochain& o) const;

    std::size_t degree_ = 0;
    std::size_t rank_ = 0;
    std::size_t nvars_ = 0;
    std::size_t coeff_rank_ = 1;
    std::map<Indices, std::vector<Poly>> entries_;
};

/// An L-connection on E = O^m:  nabla_{e_i}(s) = a(e_i)(s) + A_i s.
struct Connection {
    std::size_t rank = 1;
    std::vector<PolyMatrix> matrices;

    /// All A_i = 0: the standard connection nabla_D(f s) = a(D)(f) s.
    static Connection trivial(const LieRinehartAlgebra& a, std::size_t m = 1);
};

using CurvatureTensor = std::map<std::pair<std::size_t, std::size_t>, PolyMatrix>;

void require_connection(const LieRinehartAlgebra& a, const Connection& conn);

/// nabla_u(s) for an arbitrary section u of L.
std::vector<Poly> covariant_derivative(const LieRinehartAlgebra& a, const Connection& conn,
                                       const LElement& u, const std::vector<Poly>& s);

/// Chevalley-Eilenberg differential with coefficients in (O^m, conn).
/// Requires c.degree() + 1 <= rank.
Cochain ce_differential(const LieRinehartAlgebra& a, const Connection& conn, const Cochain& c);
/// Differential with trivial coefficients of rank c.coeff_rank().
Cochain ce_differential(const LieRinehartAlgebra& a, const Cochain& c);

/// dc = 0 for the trivial connection; top-degree cochains are cocycles.
bool is_cocycle(const LieRinehartAlgebra& a, const Cochain& c);

/// Degree bound used when none is given: max coefficient degree of the
/// inputs plus 2.
int default_coboundary_bound(const Cochain& omega1, const Cochain& omega2);

/// A 1-cochain rho with polynomial values of degree <= bound and
/// d rho = omega2 - omega1, or nullopt if none exists at this bound.
/// Throws PreconditionError if either input is not a 2-cocycle.
std::optional<Cochain> coboundary_solve(const LieRinehartAlgebra& a, const Cochain& omega1,
                                        const Cochain& omega2, std::optional<int> bound = {});

/// R(e_i, e_j) = a_i(A_j) - a_j(A_i) + [A_i, A_j] - sum_k c_ij^k A_k for i < j.
CurvatureTensor curvature(const LieRinehartAlgebra& a, const Connection& conn);

/// Every R(e_i, e_j) equals omega(e_i, e_j) * Id.
bool has_curvature_type(const LieRinehartAlgebra& a, const Connection& conn, const Cochain& omega);

/// dim H^k of a Lie algebra (nvars = 0) with trivial coefficients Q.
/// Throws InvalidArgument when nvars > 0.
std::size_t lie_algebra_cohomology_dim(const LieRinehartAlgebra& a, std::size_t k);

/// L_omega = O s + L with [e_i, e_j] gaining omega_ij s, a(s) = 0 and s
/// central; s is the last basis element.  Rejects non-cocycles.
LieRinehartAlgebra abelian_extension(const LieRinehartAlgebra& a, const Cochain& omega);
/// Same construction without the cocycle check.
LieRinehartAlgebra abelian_extension_unchecked(const LieRinehartAlgebra& a, const Cochain& omega);

}  // namespace lrk
