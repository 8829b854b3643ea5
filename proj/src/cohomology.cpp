#include "lrkit/cohomology.hpp"

#include <algorithm>

#include "lrkit/errors.hpp"
#include "lrkit/linalg.hpp"
#include "lrkit/text.hpp"

namespace lrk {

PolyMatrix::PolyMatrix(std::size_t m, std::size_t nvars)
    : m_(m), nvars_(nvars), data_(m * m, Poly(nvars)) {}

PolyMatrix PolyMatrix::identity(std::size_t m, std::size_t nvars) {
    return scalar(m, Poly::constant(nvars, 1));
}

PolyMatrix PolyMatrix::scalar(std::size_t m, const Poly& f) {
    PolyMatrix out(m, f.nvars());
    for (std::size_t i = 0; i < m; ++i) out.at(i, i) = f;
    return out;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
    if (o.m_ != m_) throw DimensionMismatch("matrix size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
    if (o.m_ != m_) throw DimensionMismatch("matrix size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.m_ != b.m_) throw DimensionMismatch("matrix size mismatch");
    PolyMatrix out(a.m_, a.nvars_);
    for (std::size_t i = 0; i < a.m_; ++i) {
        for (std::size_t k = 0; k < a.m_; ++k) {
            const Poly& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < a.m_; ++j) {
                if (!b.at(k, j).is_zero()) out.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return out;
}

PolyMatrix operator*(const Poly& f, PolyMatrix a) {
    for (auto& p : a.data_) p = f * p;
    return a;
}

std::vector<Poly> PolyMatrix::apply(const std::vector<Poly>& s) const {
    if (s.size() != m_) throw DimensionMismatch("section length does not match matrix size");
    std::vector<Poly> out(m_, Poly(nvars_));
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = 0; j < m_; ++j) {
            if (!at(i, j).is_zero()) out[i] += at(i, j) * s[j];
        }
    }
    return out;
}

PolyMatrix PolyMatrix::differentiate(const Derivation& d) const {
    PolyMatrix out(m_, nvars_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = d.apply(data_[i]);
    return out;
}

std::string PolyMatrix::to_string() const {
    if (m_ == 1) return data_.front().to_string();
    std::string out = "[";
    for (std::size_t i = 0; i < m_; ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < m_; ++j) {
            if (j) out += ", ";
            out += at(i, j).to_string();
        }
        out += "]";
    }
    return out + "]";
}

// ---------------------------------------------------------------------------

Cochain::Cochain(std::size_t degree, std::size_t rank, std::size_t nvars, std::size_t coeff_rank)
    : degree_(degree), rank_(rank), nvars_(nvars), coeff_rank_(coeff_rank) {
    if (degree > rank) {
        throw InvalidArgument("cochain degree " + std::to_string(degree) + " exceeds rank " +
                              std::to_string(rank));
    }
    if (coeff_rank == 0) throw InvalidArgument("coefficient rank must be positive");
}

namespace {

// Sorts indices in place and returns the permutation sign, or 0 on repeats.
int sort_with_sign(std::vector<std::size_t>& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < idx.size(); ++i) {
        if (idx[i] == idx[i - 1]) return 0;
    }
    return sign;
}

bool all_zero(const std::vector<Poly>& v) {
    return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

// Increasing k-tuples from {0..r-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t r, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > r) return out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == r - k + (i - 1)) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace

void Cochain::set(Indices indices, std::vector<Poly> value) {
    if (indices.size() != degree_) throw DimensionMismatch("index tuple length differs from degree");
    if (value.size() != coeff_rank_) throw DimensionMismatch("cochain value has wrong length");
    for (auto i : indices) {
        if (i >= rank_) throw InvalidArgument("cochain index out of range");
    }
    for (const auto& p : value) {
        if (p.nvars() != nvars_) throw DimensionMismatch("cochain value over wrong ring");
    }
    const int sign = sort_with_sign(indices);
    if (sign == 0) {
        if (!all_zero(value)) throw InvalidArgument("alternating cochain must vanish on repeated indices");
        return;
    }
    if (sign < 0) {
        for (auto& p : value) p = -p;
    }
    if (all_zero(value)) {
        entries_.erase(indices);
    } else {
        entries_[std::move(indices)] = std::move(value);
    }
}

std::vector<Poly> Cochain::value(std::span<const std::size_t> indices) const {
    if (indices.size() != degree_) throw DimensionMismatch("index tuple length differs from degree");
    std::vector<std::size_t> idx(indices.begin(), indices.end());
    const int sign = sort_with_sign(idx);
    std::vector<Poly> out(coeff_rank_, Poly(nvars_));
    if (sign == 0) return out;
    auto it = entries_.find(idx);
    if (it == entries_.end()) return out;
    out = it->second;
    if (sign < 0) {
        for (auto& p : out) p = -p;
    }
    return out;
}

int Cochain::max_poly_degree() const {
    int d = -1;
    for (const auto& [idx, v] : entries_) {
        for (const auto& p : v) d = std::max(d, p.total_degree());
    }
    return d;
}

void Cochain::require_compatible(const Cochain& o) const {
    if (o.degree_ != degree_ || o.rank_ != rank_ || o.nvars_ != nvars_ || o.coeff_rank_ != coeff_rank_) {
        throw DimensionMismatch("cochains of different shape");
    }
}

Cochain& Cochain::operator+=(const Cochain& o) {
    require_compatible(o);
    for (const auto& [idx, v] : o.entries_) {
        std::vector<Poly> sum = value(idx);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
        set(idx, std::move(sum));
    }
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
    require_compatible(o);
    for (const auto& [idx, v] : o.entries_) {
        std::vector<Poly> diff = value(idx);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= v[i];
        set(idx, std::move(diff));
    }
    return *this;
}

std::string Cochain::to_string(const std::string& name) const {
    if (entries_.empty()) return "0";
    std::string out;
    for (const auto& [idx, v] : entries_) {
        if (!out.empty()) out += '\n';
        out += name + "(";
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i) out += ',';
            out += "d" + std::to_string(idx[i] + 1);
        }
        out += ") = " + text::section_string(v);
    }
    return out;
}

// ---------------------------------------------------------------------------

Connection Connection::trivial(const LieRinehartAlgebra& a, std::size_t m) {
    return Connection{m, std::vector<PolyMatrix>(a.rank(), PolyMatrix(m, a.nvars()))};
}

void require_connection(const LieRinehartAlgebra& a, const Connection& conn) {
    if (conn.matrices.size() != a.rank()) {
        throw DimensionMismatch("connection has " + std::to_string(conn.matrices.size()) +
                                " matrices for an algebroid of rank " + std::to_string(a.rank()));
    }
    for (const auto& m : conn.matrices) {
        if (m.size() != conn.rank || m.nvars() != a.nvars()) {
            throw DimensionMismatch("connection matrix has wrong size or ring");
        }
    }
}

namespace {

std::vector<Poly> nabla_basis(const LieRinehartAlgebra& a, const Connection& conn, std::size_t i,
                              const std::vector<Poly>& s) {
    std::vector<Poly> out = conn.matrices[i].apply(s);
    const Derivation& d = a.anchor(i);
    for (std::size_t p = 0; p < s.size(); ++p) out[p] += d.apply(s[p]);
    return out;
}

}  // namespace

std::vector<Poly> covariant_derivative(const LieRinehartAlgebra& a, const Connection& conn,
                                       const LElement& u, const std::vector<Poly>& s) {
    require_connection(a, conn);
    if (u.rank() != a.rank()) throw DimensionMismatch("element rank mismatch");
    std::vector<Poly> out(conn.rank, Poly(a.nvars()));
    for (std::size_t i = 0; i < a.rank(); ++i) {
        if (u.coords[i].is_zero()) continue;
        const auto term = nabla_basis(a, conn, i, s);
        for (std::size_t p = 0; p < out.size(); ++p) out[p] += u.coords[i] * term[p];
    }
    return out;
}

Cochain ce_differential(const LieRinehartAlgebra& a, const Connection& conn, const Cochain& c) {
    require_connection(a, conn);
    if (c.rank() != a.rank() || c.nvars() != a.nvars()) {
        throw DimensionMismatch("cochain does not belong to this algebroid");
    }
    if (c.coeff_rank() != conn.rank) {
        throw DimensionMismatch("cochain coefficient rank differs from connection rank");
    }
    const std::size_t k = c.degree();
    if (k + 1 > a.rank()) {
        throw DimensionMismatch("differential of a degree-" + std::to_string(k) +
                                " cochain needs rank > " + std::to_string(k));
    }
    Cochain out(k + 1, a.rank(), a.nvars(), c.coeff_rank());
    const std::size_t m = c.coeff_rank();
    for (const auto& tuple : combinations(a.rank(), k + 1)) {
        std::vector<Poly> val(m, Poly(a.nvars()));
        for (std::size_t p = 0; p <= k; ++p) {
            std::vector<std::size_t> rest;
            for (std::size_t t = 0; t <= k; ++t) {
                if (t != p) rest.push_back(tuple[t]);
            }
            const auto term = nabla_basis(a, conn, tuple[p], c.value(rest));
            for (std::size_t q = 0; q < m; ++q) {
                if (p % 2 == 0) {
                    val[q] += term[q];
                } else {
                    val[q] -= term[q];
                }
            }
        }
        for (std::size_t p = 0; p <= k; ++p) {
            for (std::size_t q = p + 1; q <= k; ++q) {
                const LElement s = a.structure(tuple[p], tuple[q]);
                std::vector<std::size_t> args{0};
                for (std::size_t t = 0; t <= k; ++t) {
                    if (t != p && t != q) args.push_back(tuple[t]);
                }
                for (std::size_t l = 0; l < a.rank(); ++l) {
                    if (s.coords[l].is_zero()) continue;
                    args[0] = l;
                    const auto w = c.value(args);
                    const Poly coeff = (p + q) % 2 == 0 ? s.coords[l] : -s.coords[l];
                    for (std::size_t r = 0; r < m; ++r) val[r] += coeff * w[r];
                }
            }
        }
        out.set(tuple, std::move(val));
    }
    return out;
}

Cochain ce_differential(const LieRinehartAlgebra& a, const Cochain& c) {
    return ce_differential(a, Connection::trivial(a, c.coeff_rank()), c);
}

bool is_cocycle(const LieRinehartAlgebra& a, const Cochain& c) {
    if (c.rank() != a.rank() || c.nvars() != a.nvars()) {
        throw DimensionMismatch("cochain does not belong to this algebroid");
    }
    if (c.degree() == a.rank()) return true;
    return ce_differential(a, c).is_zero();
}

int default_coboundary_bound(const Cochain& omega1, const Cochain& omega2) {
    return std::max({omega1.max_poly_degree(), omega2.max_poly_degree(), 0}) + 2;
}

namespace {

std::vector<Exponent> exponents_up_to(std::size_t nvars, int bound) {
    std::vector<Exponent> out;
    Exponent e(nvars, 0);
    // Depth-first enumeration of exponent vectors with total degree <= bound.
    auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
        if (var == nvars) {
            out.push_back(e);
            return;
        }
        for (int d = 0; d <= remaining; ++d) {
            e[var] = static_cast<std::uint32_t>(d);
            self(self, var + 1, remaining - d);
        }
        e[var] = 0;
    };
    rec(rec, 0, bound);
    return out;
}

}  // namespace

std::optional<Cochain> coboundary_solve(const LieRinehartAlgebra& a, const Cochain& omega1,
                                        const Cochain& omega2, std::optional<int> bound) {
    for (const Cochain* w : {&omega1, &omega2}) {
        if (w->degree() != 2 || w->coeff_rank() != 1) {
            throw InvalidArgument("coboundary_solve expects scalar 2-cochains");
        }
        if (!is_cocycle(a, *w)) throw PreconditionError("input 2-cochain is not a cocycle");
    }
    const int deg = bound.value_or(default_coboundary_bound(omega1, omega2));
    if (deg < 0) throw InvalidArgument("degree bound must be nonnegative");
    const Cochain target = omega2 - omega1;

    struct Unknown {
        std::size_t slot;
        Exponent exp;
    };
    std::vector<Unknown> unknowns;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        for (auto& e : exponents_up_to(a.nvars(), deg)) unknowns.push_back({i, std::move(e)});
    }

    // Row key: (index pair of the 2-cochain, exponent of the coefficient).
    using RowKey = std::pair<Cochain::Indices, Exponent>;
    std::map<RowKey, std::size_t> rows;
    std::vector<std::map<std::size_t, Rational>> columns;
    auto row_of = [&rows](const RowKey& key) {
        return rows.try_emplace(key, rows.size()).first->second;
    };
    for (const auto& u : unknowns) {
        Cochain rho(1, a.rank(), a.nvars());
        rho.set({u.slot}, Poly::monomial(u.exp, 1));
        std::map<std::size_t, Rational> col;
        const Cochain d = ce_differential(a, rho);
        for (const auto& [idx, v] : d.entries()) {
            for (const auto& [e, c] : v[0].terms()) col[row_of({idx, e})] = c;
        }
        columns.push_back(std::move(col));
    }
    std::vector<std::pair<std::size_t, Rational>> rhs_entries;
    for (const auto& [idx, v] : target.entries()) {
        for (const auto& [e, c] : v[0].terms()) rhs_entries.emplace_back(row_of({idx, e}), c);
    }

    RationalMatrix matrix(rows.size(), std::vector<Rational>(unknowns.size(), Rational(0)));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        for (const auto& [r, c] : columns[j]) matrix[r][j] = c;
    }
    std::vector<Rational> rhs(rows.size(), Rational(0));
    for (const auto& [r, c] : rhs_entries) rhs[r] = c;

    const auto solution = solve_linear(std::move(matrix), std::move(rhs));
    if (!solution) return std::nullopt;

    Cochain rho(1, a.rank(), a.nvars());
    std::vector<Poly> values(a.rank(), Poly(a.nvars()));
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
        values[unknowns[j].slot].add_term(unknowns[j].exp, (*solution)[j]);
    }
    for (std::size_t i = 0; i < a.rank(); ++i) rho.set({i}, values[i]);

    if (ce_differential(a, rho) != target) {
        throw VerificationError("coboundary solution failed re-verification");
    }
    return rho;
}

CurvatureTensor curvature(const LieRinehartAlgebra& a, const Connection& conn) {
    require_connection(a, conn);
    CurvatureTensor out;
    const auto& A = conn.matrices;
    for (std::size_t i = 0; i < a.rank(); ++i) {
        for (std::size_t j = i + 1; j < a.rank(); ++j) {
            PolyMatrix r = A[j].differentiate(a.anchor(i)) - A[i].differentiate(a.anchor(j)) +
                           A[i] * A[j] - A[j] * A[i];
            const LElement s = a.structure(i, j);
            for (std::size_t k = 0; k < a.rank(); ++k) {
                if (!s.coords[k].is_zero()) r -= s.coords[k] * A[k];
            }
            out.emplace(std::make_pair(i, j), std::move(r));
        }
    }
    return out;
}

bool has_curvature_type(const LieRinehartAlgebra& a, const Connection& conn, const Cochain& omega) {
    if (omega.degree() != 2 || omega.coeff_rank() != 1 || omega.rank() != a.rank() ||
        omega.nvars() != a.nvars()) {
        throw DimensionMismatch("curvature type must be a scalar 2-cochain on this algebroid");
    }
    for (const auto& [ij, r] : curvature(a, conn)) {
        const std::vector<std::size_t> idx{ij.first, ij.second};
        if (r != PolyMatrix::scalar(conn.rank, omega.scalar_value(idx))) return false;
    }
    return true;
}

std::size_t lie_algebra_cohomology_dim(const LieRinehartAlgebra& a, std::size_t k) {
    if (a.nvars() != 0) {
        throw InvalidArgument("cohomology dimensions are only available over a point (nvars = 0)");
    }
    const std::size_t r = a.rank();
    if (k > r) return 0;

    // Matrix of d: C^deg -> C^{deg+1} in the basis of increasing index tuples.
    auto differential_rank = [&](std::size_t deg) -> std::size_t {
        if (deg + 1 > r) return 0;
        const auto sources = combinations(r, deg);
        const auto targets = combinations(r, deg + 1);
        RationalMatrix m(targets.size(), std::vector<Rational>(sources.size(), Rational(0)));
        for (std::size_t col = 0; col < sources.size(); ++col) {
            Cochain unit(deg, r, 0);
            unit.set(sources[col], Poly::constant(0, 1));
            const Cochain d = ce_differential(a, unit);
            for (std::size_t row = 0; row < targets.size(); ++row) {
                m[row][col] = d.scalar_value(targets[row]).constant_term();
            }
        }
        return matrix_rank(std::move(m));
    };

    const std::size_t dim = combinations(r, k).size();
    const std::size_t rank_out = differential_rank(k);
    const std::size_t rank_in = k == 0 ? 0 : differential_rank(k - 1);
    return dim - rank_out - rank_in;
}

LieRinehartAlgebra abelian_extension_unchecked(const LieRinehartAlgebra& a, const Cochain& omega) {
    if (omega.degree() != 2 || omega.coeff_rank() != 1 || omega.rank() != a.rank() ||
        omega.nvars() != a.nvars()) {
        throw DimensionMismatch("extension cocycle must be a scalar 2-cochain on this algebroid");
    }
    const std::size_t r = a.rank();
    LieRinehartAlgebra out(a.nvars(), r + 1);
    for (std::size_t i = 0; i < r; ++i) {
        out.set_anchor(i, a.anchor(i));
        for (std::size_t j = i + 1; j < r; ++j) {
            std::vector<Poly> coords = a.structure(i, j).coords;
            const std::vector<std::size_t> idx{i, j};
            coords.push_back(omega.scalar_value(idx));
            out.set_bracket(i, j, std::move(coords));
        }
    }
    std::vector<std::string> names = a.basis_names();
    names.push_back("s");
    out.set_basis_names(std::move(names));
    return out;
}

LieRinehartAlgebra abelian_extension(const LieRinehartAlgebra& a, const Cochain& omega) {
    if (!is_cocycle(a, omega)) {
        Cochain d = ce_differential(a, omega);
        throw PreconditionError("extension 2-cochain is not closed: " + d.to_string("dw"));
    }
    return abelian_extension_unchecked(a, omega);
}

}  // namespace lrk
