#include "lrkit/diff_operators.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "lrkit/errors.hpp"

namespace lrk {

const UPresentation& weyl_presentation(std::size_t nvars) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<UPresentation>> presentations;
    std::lock_guard lock(mutex);
    auto& slot = presentations[nvars];
    if (!slot) slot = std::make_unique<UPresentation>(tangent_algebroid(nvars));
    return *slot;
}

Poly weyl_apply(const UElement& u, const Poly& g) {
    if (u.rank() != u.nvars() || g.nvars() != u.nvars()) {
        throw DimensionMismatch("operator and polynomial live over different rings");
    }
    Poly out(g.nvars());
    for (const auto& [alpha, f] : u.terms()) {
        Poly h = g;
        for (std::size_t i = 0; i < alpha.size() && !h.is_zero(); ++i) {
            for (std::uint32_t k = 0; k < alpha[i] && !h.is_zero(); ++k) h = h.partial(i);
        }
        out += f * h;
    }
    return out;
}

OperatorElement::OperatorElement(std::size_t m, std::size_t nvars)
    : m_(m), nvars_(nvars), entries_(m * m, UElement(nvars, nvars)) {}

OperatorElement OperatorElement::identity(std::size_t m, std::size_t nvars) {
    return scalar(m, UElement::one(nvars, nvars));
}

OperatorElement OperatorElement::scalar(std::size_t m, const UElement& u) {
    OperatorElement t(m, u.nvars());
    for (std::size_t i = 0; i < m; ++i) t.set(i, i, u);
    return t;
}

OperatorElement OperatorElement::from_matrix(const PolyMatrix& a) {
    const std::size_t n = a.nvars();
    OperatorElement t(a.size(), n);
    for (std::size_t r = 0; r < a.size(); ++r) {
        for (std::size_t c = 0; c < a.size(); ++c) t.set(r, c, UElement::scalar(n, a.at(r, c)));
    }
    return t;
}

void OperatorElement::set(std::size_t r, std::size_t c, UElement u) {
    if (u.rank() != nvars_ || u.nvars() != nvars_) throw DimensionMismatch("entry is not a Weyl element");
    entries_.at(r * m_ + c) = std::move(u);
}

bool OperatorElement::is_zero() const {
    for (const auto& e : entries_) {
        if (!e.is_zero()) return false;
    }
    return true;
}

void OperatorElement::require_compatible(const OperatorElement& o) const {
    if (m_ != o.m_ || nvars_ != o.nvars_) throw DimensionMismatch("operators act on different modules");
}

OperatorElement& OperatorElement::operator+=(const OperatorElement& o) {
    require_compatible(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
}

OperatorElement& OperatorElement::operator-=(const OperatorElement& o) {
    require_compatible(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
}

OperatorElement operator*(const OperatorElement& a, const OperatorElement& b) {
    a.require_compatible(b);
    const UPresentation& p = weyl_presentation(a.nvars_);
    OperatorElement out(a.m_, a.nvars_);
    for (std::size_t r = 0; r < a.m_; ++r) {
        for (std::size_t c = 0; c < a.m_; ++c) {
            UElement sum(a.nvars_, a.nvars_);
            for (std::size_t k = 0; k < a.m_; ++k) {
                const UElement& x = a.at(r, k);
                const UElement& y = b.at(k, c);
                if (x.is_zero() || y.is_zero()) continue;
                sum += u_mul(p, x, y);
            }
            out.set(r, c, std::move(sum));
        }
    }
    return out;
}

OperatorElement OperatorElement::homogeneous_part(int d) const {
    OperatorElement out(m_, nvars_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i].homogeneous_part(d);
    return out;
}

std::string OperatorElement::to_string() const {
    if (m_ == 1) return entries_.front().to_string();
    std::string s = "[";
    for (std::size_t r = 0; r < m_; ++r) {
        s += r ? ", [" : "[";
        for (std::size_t c = 0; c < m_; ++c) {
            if (c) s += ", ";
            s += at(r, c).to_string();
        }
        s += "]";
    }
    return s + "]";
}

OperatorElement op_commutator(const OperatorElement& a, const OperatorElement& b) { return a * b - b * a; }

std::vector<Poly> op_apply(const OperatorElement& t, const std::vector<Poly>& s) {
    if (s.size() != t.rank()) throw DimensionMismatch("section has the wrong rank");
    std::vector<Poly> out(t.rank(), Poly(t.nvars()));
    for (std::size_t r = 0; r < t.rank(); ++r) {
        for (std::size_t c = 0; c < t.rank(); ++c) out[r] += weyl_apply(t.at(r, c), s[c]);
    }
    return out;
}

int op_order(const OperatorElement& t) {
    int d = -1;
    for (std::size_t r = 0; r < t.rank(); ++r) {
        for (std::size_t c = 0; c < t.rank(); ++c) d = std::max(d, t.at(r, c).degree());
    }
    return d;
}

bool order_predicate(const OperatorElement& t, int n) {
    if (n < 0) return t.is_zero();
    const std::size_t nv = t.nvars();
    for (std::size_t i = 0; i < nv; ++i) {
        const auto xi = OperatorElement::scalar(t.rank(), UElement::scalar(nv, Poly::variable(nv, i)));
        const OperatorElement c = op_commutator(t, xi);
        if (n == 0 ? !c.is_zero() : !order_predicate(c, n - 1)) return false;
    }
    return true;
}

OperatorElement random_operator(Rng& rng, std::size_t m, std::size_t n, unsigned order, bool scalar_top) {
    const UPresentation& p = weyl_presentation(n);
    auto leading = [&] {
        UElement u(n, n);
        while (u.is_zero()) {
            const long nterms = rng.uniform(1, 2);
            for (long k = 0; k < nterms; ++k) u.add_term(rng.multi_index(n, order), rng.poly(n, 2, 2));
        }
        return u;
    };
    auto lower = [&] {
        if (order == 0 || !rng.coin()) return UElement(n, n);
        return random_uelement(rng, p, order - 1, 2);
    };
    OperatorElement t(m, n);
    if (n == 0) order = 0;
    if (scalar_top) t = OperatorElement::scalar(m, leading());
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            UElement e = t.at(r, c);
            if (!scalar_top && (rng.coin() || (r == 0 && c == 0))) e += leading();
            e += lower();
            t.set(r, c, std::move(e));
        }
    }
    return t;
}

DiffQpReport diff_qp_check(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed,
                           unsigned max_order) {
    if (trials == 0) throw InvalidArgument("diff_qp_check needs at least one trial");
    if (m == 0) throw InvalidArgument("module rank must be positive");
    DiffQpReport report;
    Rng rng(seed);
    auto fail = [&](const std::string& what, const OperatorElement& d1, const OperatorElement& d2) {
        report.passed = false;
        report.witness = what + " for D = " + d1.to_string() + ", D' = " + d2.to_string();
    };
    for (std::size_t t = 0; t < trials; ++t) {
        ++report.trials;
        const int i = static_cast<int>(rng.uniform(0, max_order));
        const int j = static_cast<int>(rng.uniform(0, max_order));

        const OperatorElement d1 = random_operator(rng, m, n, i, false);
        const OperatorElement d2 = random_operator(rng, m, n, j, false);
        const OperatorElement prod = d1 * d2;
        if (op_order(prod) > i + j) {
            fail("order(D D') = " + std::to_string(op_order(prod)) + " > " + std::to_string(i + j), d1, d2);
            return report;
        }
        if (n > 0) {
            const Poly f = rng.poly(n, 2, 2);
            const auto fo = OperatorElement::scalar(m, UElement::scalar(n, f));
            const OperatorElement lhs = op_commutator(prod, fo);
            const OperatorElement rhs = d1 * op_commutator(d2, fo) + op_commutator(d1, fo) * d2;
            if (lhs != rhs) {
                fail("[D D', f] - D [D', f] - [D, f] D' = " + (lhs - rhs).to_string() + " with f = " + f.to_string(),
                     d1, d2);
                return report;
            }
        }

        const OperatorElement s1 = random_operator(rng, m, n, i, true);
        const OperatorElement s2 = random_operator(rng, m, n, j, true);
        const OperatorElement br = op_commutator(s1, s2);
        if (op_order(br) > i + j - 1) {
            fail("order([D, D']) = " + std::to_string(op_order(br)) + " > " + std::to_string(i + j - 1), s1, s2);
            return report;
        }
    }
    return report;
}

std::optional<ScalarSymbol> first_order_scalar_symbol(const OperatorElement& t) {
    if (op_order(t) >= 2) throw PreconditionError("operator has order " + std::to_string(op_order(t)) + " >= 2");
    const std::size_t m = t.rank();
    const std::size_t n = t.nvars();
    const OperatorElement top = t.homogeneous_part(1);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            if (r != c && !top.at(r, c).is_zero()) return std::nullopt;
            if (r == c && top.at(r, c) != top.at(0, 0)) return std::nullopt;
        }
    }
    std::vector<Poly> coeffs(n, Poly(n));
    if (m > 0) {
        for (std::size_t i = 0; i < n; ++i) {
            MultiIndex alpha(n, 0);
            alpha[i] = 1;
            coeffs[i] = top.at(0, 0).coefficient(alpha);
        }
    }
    ScalarSymbol out{Derivation(std::move(coeffs)), PolyMatrix(m, n)};
    const MultiIndex zero(n, 0);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) out.matrix_part.at(r, c) = t.at(r, c).coefficient(zero);
    }
    return out;
}

OperatorElement scalar_symbol_operator(const Derivation& x, const PolyMatrix& a) {
    const std::size_t n = a.nvars();
    if (x.nvars() != n) throw DimensionMismatch("derivation and matrix over different rings");
    UElement u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        MultiIndex alpha(n, 0);
        alpha[i] = 1;
        u.add_term(alpha, x.coeff(i));
    }
    return OperatorElement::scalar(a.size(), u) + OperatorElement::from_matrix(a);
}

LElement to_atiyah_element(const Derivation& x, const PolyMatrix& a) {
    const std::size_t m = a.size();
    const std::size_t n = a.nvars();
    if (x.nvars() != n) throw DimensionMismatch("derivation and matrix over different rings");
    LElement e = LElement::zero(m * m + n, n);
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) e.coords[p * m + q] = a.at(p, q);
    }
    for (std::size_t i = 0; i < n; ++i) e.coords[m * m + i] = x.coeff(i);
    return e;
}

ScalarSymbol from_atiyah_element(const LElement& e, std::size_t m, std::size_t n) {
    if (e.coords.size() != m * m + n) throw DimensionMismatch("element is not in atiyah:" + std::to_string(m) +
                                                              ":" + std::to_string(n));
    ScalarSymbol out{Derivation(std::vector<Poly>(e.coords.begin() + static_cast<long>(m * m), e.coords.end())),
                     PolyMatrix(m, n)};
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) out.matrix_part.at(p, q) = e.coords[p * m + q];
    }
    return out;
}

OperatorElement parse_operator(const std::vector<std::vector<std::string>>& entries, std::size_t nvars) {
    const std::size_t m = entries.size();
    if (m == 0) throw DimensionMismatch("operator needs at least one row");
    const UPresentation& p = weyl_presentation(nvars);
    OperatorElement t(m, nvars);
    for (std::size_t r = 0; r < m; ++r) {
        if (entries[r].size() != m) throw DimensionMismatch("operator matrix must be square");
        for (std::size_t c = 0; c < m; ++c) t.set(r, c, parse_uelement(entries[r][c], p));
    }
    return t;
}

}  // namespace lrk
