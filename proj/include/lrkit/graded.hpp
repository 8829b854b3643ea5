#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>

#include "lrkit/errors.hpp"
#include "lrkit/poly.hpp"
#include "lrkit/text.hpp"

namespace lrk {

/// Sum of ring coefficients times ordered monomials g_1^b1 ... g_r^br.
///
/// The same storage serves the enveloping algebra (noncommutative, product
/// defined by a presentation) and the symmetric algebra (commutative).  The
/// tag fixes the printed generator letter and keeps the two types apart.
/// Ring coefficients sit on the left; zero coefficients are never stored.
template <class Tag>
class GradedElement {
public:
    using TermMap = std::map<MultiIndex, Poly>;

    GradedElement() = default;
    GradedElement(std::size_t rank, std::size_t nvars) : rank_(rank), nvars_(nvars) {}

    static GradedElement scalar(std::size_t rank, const Poly& f) {
        GradedElement u(rank, f.nvars());
        u.add_term(MultiIndex(rank, 0), f);
        return u;
    }
    static GradedElement one(std::size_t rank, std::size_t nvars) {
        return scalar(rank, Poly::constant(nvars, 1));
    }
    static GradedElement generator(std::size_t rank, std::size_t nvars, std::size_t index) {
        if (index >= rank) throw InvalidArgument("generator index out of range");
        MultiIndex beta(rank, 0);
        beta[index] = 1;
        return monomial(std::move(beta), Poly::constant(nvars, 1));
    }
    static GradedElement monomial(MultiIndex beta, const Poly& f) {
        GradedElement u(beta.size(), f.nvars());
        u.add_term(beta, f);
        return u;
    }

    std::size_t rank() const { return rank_; }
    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Largest |beta| among stored terms; -1 for zero.
    int degree() const {
        int d = -1;
        for (const auto& [beta, f] : terms_) {
            d = std::max(d, static_cast<int>(std::accumulate(beta.begin(), beta.end(), 0u)));
        }
        return d;
    }

    /// Terms of generator degree exactly d.
    GradedElement homogeneous_part(int d) const {
        GradedElement out(rank_, nvars_);
        for (const auto& [beta, f] : terms_) {
            if (static_cast<int>(std::accumulate(beta.begin(), beta.end(), 0u)) == d) {
                out.terms_.emplace(beta, f);
            }
        }
        return out;
    }

    Poly coefficient(const MultiIndex& beta) const {
        auto it = terms_.find(beta);
        return it == terms_.end() ? Poly(nvars_) : it->second;
    }

    void add_term(const MultiIndex& beta, const Poly& f) {
        if (beta.size() != rank_ || f.nvars() != nvars_) {
            throw DimensionMismatch("term does not match element rank or ring");
        }
        if (f.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(beta, f);
        if (!inserted) {
            it->second += f;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void require_compatible(const GradedElement& other) const {
        if (rank_ != other.rank_ || nvars_ != other.nvars_) {
            throw DimensionMismatch("elements belong to different algebras");
        }
    }

    GradedElement& operator+=(const GradedElement& other) {
        require_compatible(other);
        for (const auto& [beta, f] : other.terms_) add_term(beta, f);
        return *this;
    }
    GradedElement& operator-=(const GradedElement& other) {
        require_compatible(other);
        for (const auto& [beta, f] : other.terms_) add_term(beta, -f);
        return *this;
    }
    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    GradedElement operator-() const {
        GradedElement out = *this;
        for (auto& [beta, f] : out.terms_) f = -f;
        return out;
    }

    /// Left multiplication by a ring element.
    friend GradedElement operator*(const Poly& g, const GradedElement& u) {
        if (g.nvars() != u.nvars_) throw DimensionMismatch("ring element over wrong ring");
        GradedElement out(u.rank_, u.nvars_);
        if (g.is_zero()) return out;
        for (const auto& [beta, f] : u.terms_) out.add_term(beta, g * f);
        return out;
    }
    friend GradedElement operator*(const Rational& c, const GradedElement& u) {
        return Poly::constant(u.nvars_, c) * u;
    }

    friend bool operator==(const GradedElement& a, const GradedElement& b) {
        return a.rank_ == b.rank_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    std::string to_string() const { return text::graded_string(terms_, Tag::letter); }

private:
    std::size_t rank_ = 0;
    std::size_t nvars_ = 0;
    TermMap terms_;
};

struct EnvelopingTag {
    static constexpr char letter = 'd';
};
struct SymbolTag {
    static constexpr char letter = 's';
};

/// Element of an enveloping algebra in PBW normal form.
using UElement = GradedElement<EnvelopingTag>;
/// Element of the symmetric algebra S_O L.
using SymElement = GradedElement<SymbolTag>;

inline unsigned multi_index_degree(const MultiIndex& beta) {
    return std::accumulate(beta.begin(), beta.end(), 0u);
}

}  // namespace lrk
