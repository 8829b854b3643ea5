#include "lrkit/enveloping.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

#include "lrkit/errors.hpp"
#include "lrkit/text.hpp"

namespace lrk {

struct UPresentation::Cache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, MultiIndex>, UElement> gen_times_monomial;
};

UPresentation::UPresentation(LieRinehartAlgebra algebroid)
    : UPresentation(std::move(algebroid), nullptr, false) {}

UPresentation::UPresentation(LieRinehartAlgebra algebroid, const Cochain& twist)
    : UPresentation(std::move(algebroid), &twist, true) {}

UPresentation UPresentation::unchecked(LieRinehartAlgebra algebroid, const Cochain& twist) {
    return UPresentation(std::move(algebroid), &twist, false);
}

UPresentation::UPresentation(LieRinehartAlgebra algebroid, const Cochain* twist, bool check)
    : algebroid_(std::make_shared<const LieRinehartAlgebra>(std::move(algebroid))),
      cache_(std::make_shared<Cache>()) {
    const std::size_t r = algebroid_->rank();
    twist_.assign(r * r, Poly(algebroid_->nvars()));
    if (twist == nullptr) return;
    if (twist->degree() != 2 || twist->coeff_rank() != 1 || twist->rank() != r ||
        twist->nvars() != algebroid_->nvars()) {
        throw DimensionMismatch("twist must be a scalar 2-cochain on the algebroid");
    }
    if (check && !is_cocycle(*algebroid_, *twist)) {
        throw PreconditionError("twist is not a 2-cocycle: " +
                                ce_differential(*algebroid_, *twist).to_string("dw"));
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            const std::vector<std::size_t> idx{i, j};
            twist_[i * r + j] = twist->scalar_value(idx);
        }
    }
    has_twist_ = !twist->is_zero();
}

Cochain UPresentation::twist_cochain() const {
    const std::size_t r = rank();
    Cochain c(2, r, nvars());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) c.set({i, j}, twist(i, j));
    }
    return c;
}

void UPresentation::require_element(const UElement& u) const {
    if (u.rank() != rank() || u.nvars() != nvars()) {
        throw DimensionMismatch("element does not belong to this presentation");
    }
}

// ---------------------------------------------------------------------------

/// Left multiplication by generators on normal forms.  For j < i the
/// relation e_i e_j = e_j e_i + [e_i, e_j] + omega_ij moves e_i past the
/// smallest letter of the monomial; every correction term has lower
/// generator degree, so the recursion terminates.
class Straightener {
public:
    explicit Straightener(const UPresentation& p) : p_(p), a_(p.algebroid()) {}

    UElement gen_times_monomial(std::size_t i, const MultiIndex& gamma) {
        const auto key = std::make_pair(i, gamma);
        {
            std::lock_guard lock(p_.cache_->mutex);
            auto it = p_.cache_->gen_times_monomial.find(key);
            if (it != p_.cache_->gen_times_monomial.end()) return it->second;
        }
        UElement result = compute(i, gamma);
        std::lock_guard lock(p_.cache_->mutex);
        p_.cache_->gen_times_monomial.emplace(key, result);
        return result;
    }

    UElement left_mul_generator(std::size_t i, const UElement& v) {
        UElement out(p_.rank(), p_.nvars());
        const Derivation& anchor = a_.anchor(i);
        for (const auto& [gamma, g] : v.terms()) {
            out += g * gen_times_monomial(i, gamma);
            const Poly ag = anchor.apply(g);
            if (!ag.is_zero()) out.add_term(gamma, ag);
        }
        return out;
    }

    /// e^beta * v.
    UElement left_mul_monomial(const MultiIndex& beta, UElement v) {
        for (std::size_t k = beta.size(); k-- > 0;) {
            for (std::uint32_t c = 0; c < beta[k]; ++c) v = left_mul_generator(k, v);
        }
        return v;
    }

private:
    UElement compute(std::size_t i, const MultiIndex& gamma) {
        const std::size_t r = p_.rank();
        const Poly one = Poly::constant(p_.nvars(), 1);
        std::size_t j = 0;
        while (j < r && gamma[j] == 0) ++j;
        if (j >= i) {
            MultiIndex beta = gamma;
            beta[i] += 1;
            return UElement::monomial(std::move(beta), one);
        }
        MultiIndex rest = gamma;
        rest[j] -= 1;
        UElement result = left_mul_generator(j, gen_times_monomial(i, rest));
        const LElement s = a_.structure(i, j);
        for (std::size_t k = 0; k < r; ++k) {
            if (!s.coords[k].is_zero()) result += s.coords[k] * gen_times_monomial(k, rest);
        }
        const Poly& w = p_.twist(i, j);
        if (!w.is_zero()) result.add_term(rest, w);
        return result;
    }

    const UPresentation& p_;
    const LieRinehartAlgebra& a_;
};

UElement u_normal_form(const UPresentation& p, const Word& w) {
    Straightener s(p);
    UElement acc = p.one();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (it->is_gen()) {
            const std::size_t i = std::get<std::size_t>(it->value);
            if (i >= p.rank()) {
                throw InvalidArgument("generator d" + std::to_string(i + 1) + " out of range for rank " +
                                      std::to_string(p.rank()));
            }
            acc = s.left_mul_generator(i, acc);
        } else {
            const Poly& f = std::get<Poly>(it->value);
            if (f.nvars() != p.nvars()) throw DimensionMismatch("ring atom over wrong ring");
            acc = f * acc;
        }
    }
    return acc;
}

UElement u_mul(const UPresentation& p, const UElement& u, const UElement& v) {
    p.require_element(u);
    p.require_element(v);
    Straightener s(p);
    UElement out(p.rank(), p.nvars());
    for (const auto& [beta, f] : u.terms()) out += f * s.left_mul_monomial(beta, v);
    return out;
}

UElement u_commutator(const UPresentation& p, const UElement& u, const UElement& v) {
    return u_mul(p, u, v) - u_mul(p, v, u);
}

SymElement principal_symbol(const UElement& u) {
    if (u.is_zero()) throw InvalidArgument("the zero element has no principal symbol");
    SymElement s(u.rank(), u.nvars());
    const UElement top = u.homogeneous_part(u.degree());
    for (const auto& [beta, f] : top.terms()) s.add_term(beta, f);
    return s;
}

UElement pbw_symmetrize(const UPresentation& p, const SymElement& sym) {
    if (sym.rank() != p.rank() || sym.nvars() != p.nvars()) {
        throw DimensionMismatch("symbol does not belong to this presentation");
    }
    Straightener s(p);
    UElement out(p.rank(), p.nvars());
    for (const auto& [beta, f] : sym.terms()) {
        std::vector<std::size_t> letters;
        for (std::size_t i = 0; i < beta.size(); ++i) letters.insert(letters.end(), beta[i], i);
        // Averaging over distinct orderings equals (1/k!) times the sum over
        // all permutations, since each distinct word occurs beta! times.
        UElement sum(p.rank(), p.nvars());
        long count = 0;
        do {
            UElement word = p.one();
            for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
                word = s.left_mul_generator(*it, word);
            }
            sum += word;
            ++count;
        } while (std::next_permutation(letters.begin(), letters.end()));
        out += f * (Rational(1, count) * sum);
    }
    return out;
}

Word parse_word(std::string_view text, const UPresentation& p) {
    Word w;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        const std::string_view atom = text.substr(pos, end - pos);
        pos = end;
        const long g = text::generator_atom(atom, 'd');
        if (g >= 0) {
            if (static_cast<std::size_t>(g) >= p.rank()) {
                throw ParseError("generator " + std::string(atom) + " out of range for rank " +
                                 std::to_string(p.rank()));
            }
            w.push_back(Atom::gen(static_cast<std::size_t>(g)));
        } else {
            w.push_back(Atom::ring(Poly::parse(atom, p.nvars())));
        }
    }
    return w;
}

UElement parse_uelement(std::string_view text, const UPresentation& p) {
    const text::Expr expr = text::parse_expression(text, 'd');
    UElement out(p.rank(), p.nvars());
    for (const auto& term : expr.terms) {
        Word w;
        w.push_back(Atom::ring(Poly::constant(p.nvars(), term.negative ? -1 : 1)));
        for (const auto& f : term.factors) {
            using K = text::Factor::Kind;
            switch (f.kind) {
                case K::Number:
                    w.push_back(Atom::ring(Poly::constant(p.nvars(), f.number)));
                    break;
                case K::Var:
                case K::Group: {
                    text::Expr single;
                    single.terms.push_back(text::Term{false, {f}});
                    w.push_back(Atom::ring(text::to_poly(single, p.nvars())));
                    break;
                }
                case K::Gen:
                    if (f.index >= p.rank()) {
                        throw ParseError("generator d" + std::to_string(f.index + 1) +
                                         " out of range for rank " + std::to_string(p.rank()));
                    }
                    for (unsigned c = 0; c < f.power; ++c) w.push_back(Atom::gen(f.index));
                    break;
            }
        }
        out += u_normal_form(p, w);
    }
    return out;
}

UElement random_uelement(Rng& rng, const UPresentation& p, unsigned max_degree, unsigned max_terms) {
    UElement u(p.rank(), p.nvars());
    const long nterms = rng.uniform(1, static_cast<long>(max_terms));
    for (long t = 0; t < nterms; ++t) {
        const unsigned deg = p.rank() == 0 ? 0 : static_cast<unsigned>(rng.uniform(0, max_degree));
        u.add_term(rng.multi_index(p.rank(), deg), rng.poly(p.nvars(), 2, 2));
    }
    if (u.is_zero()) u = p.one();
    return u;
}

ProbeReport associativity_probe(const UPresentation& p, std::size_t trials, std::uint64_t seed,
                                unsigned max_degree) {
    if (trials == 0) throw InvalidArgument("associativity_probe needs at least one trial");
    ProbeReport report;

    auto check = [&](const UElement& u, const UElement& v, const UElement& w) {
        ++report.trials;
        const UElement uv = u_mul(p, u, v);
        const UElement lhs = u_mul(p, uv, w);
        const UElement rhs = u_mul(p, u, u_mul(p, v, w));
        const auto triple = "u = " + u.to_string() + ", v = " + v.to_string() + ", w = " + w.to_string();
        if (lhs != rhs) {
            report = {false, report.trials, "(uv)w - u(vw) = " + (lhs - rhs).to_string() + " for " + triple};
            return false;
        }
        const int du = u.degree();
        const int dv = v.degree();
        if (du >= 0 && dv >= 0) {
            if (uv.degree() > du + dv) {
                report = {false, report.trials, "deg(uv) = " + std::to_string(uv.degree()) + " for " + triple};
                return false;
            }
            const UElement c = u_commutator(p, u, v);
            if (c.degree() > du + dv - 1) {
                report = {false, report.trials, "deg[u,v] = " + std::to_string(c.degree()) + " for " + triple};
                return false;
            }
        }
        return true;
    };

    std::vector<UElement> atoms;
    for (std::size_t i = 0; i < p.rank(); ++i) atoms.push_back(p.generator(i));
    for (std::size_t k = 0; k < p.nvars(); ++k) atoms.push_back(p.scalar(Poly::variable(p.nvars(), k)));
    for (const auto& u : atoms) {
        for (const auto& v : atoms) {
            for (const auto& w : atoms) {
                if (!check(u, v, w)) return report;
            }
        }
    }

    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const UElement u = random_uelement(rng, p, max_degree);
        const UElement v = random_uelement(rng, p, max_degree);
        const UElement w = random_uelement(rng, p, max_degree);
        if (!check(u, v, w)) return report;
    }
    return report;
}

LieRinehartAlgebra induced_algebroid(const UPresentation& p) {
    const std::size_t r = p.rank();
    const std::size_t n = p.nvars();
    LieRinehartAlgebra out(n, r);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Poly> anchor;
        for (std::size_t k = 0; k < n; ++k) {
            const UElement c = u_commutator(p, p.generator(i), p.scalar(Poly::variable(n, k)));
            if (c.degree() > 0) throw VerificationError("[e_i, f] left U_0");
            anchor.push_back(c.coefficient(MultiIndex(r, 0)));
        }
        out.set_anchor(i, Derivation(std::move(anchor)));
        for (std::size_t j = i + 1; j < r; ++j) {
            const UElement c = u_commutator(p, p.generator(i), p.generator(j));
            if (c.degree() > 1) throw VerificationError("[e_i, e_j] left U_1");
            std::vector<Poly> coords;
            for (std::size_t k = 0; k < r; ++k) {
                MultiIndex beta(r, 0);
                beta[k] = 1;
                coords.push_back(c.coefficient(beta));
            }
            out.set_bracket(i, j, std::move(coords));
        }
    }
    out.set_basis_names(p.algebroid().basis_names());
    return out;
}

// ---------------------------------------------------------------------------

TwistIsomorphism::TwistIsomorphism(UPresentation from, std::vector<Poly> rho, UPresentation to,
                                   std::size_t random_samples, std::uint64_t seed)
    : from_(std::move(from)), to_(std::move(to)), rho_(std::move(rho)) {
    const LieRinehartAlgebra& a = from_.algebroid();
    if (!(a == to_.algebroid())) throw DimensionMismatch("twist isomorphism needs a common algebroid");
    if (rho_.size() != a.rank()) throw DimensionMismatch("rho must have one value per basis element");
    Cochain rho_cochain(1, a.rank(), a.nvars());
    for (std::size_t i = 0; i < a.rank(); ++i) {
        if (rho_[i].nvars() != a.nvars()) throw DimensionMismatch("rho value over wrong ring");
        rho_cochain.set({i}, rho_[i]);
    }
    if (a.rank() >= 2) {
        const Cochain expected = from_.twist_cochain() - to_.twist_cochain();
        const Cochain d_rho = ce_differential(a, rho_cochain);
        if (d_rho != expected) {
            throw PreconditionError("twist difference is not d(rho): d(rho) - (w_from - w_to) = " +
                                    (d_rho - expected).to_string("r"));
        }
    }
    for (std::size_t i = 0; i < a.rank(); ++i) {
        images_.push_back(to_.generator(i) + to_.scalar(rho_[i]));
    }
    verify(random_samples, seed);
}

UElement TwistIsomorphism::apply(const UElement& u) const {
    from_.require_element(u);
    UElement out(to_.rank(), to_.nvars());
    for (const auto& [beta, f] : u.terms()) {
        UElement image = to_.one();
        for (std::size_t k = beta.size(); k-- > 0;) {
            for (std::uint32_t c = 0; c < beta[k]; ++c) image = u_mul(to_, images_[k], image);
        }
        out += f * image;
    }
    return out;
}

void TwistIsomorphism::check_pair(const UElement& u, const UElement& v) {
    const UElement lhs = apply(u_mul(from_, u, v));
    const UElement rhs = u_mul(to_, apply(u), apply(v));
    if (lhs != rhs) {
        throw VerificationError("phi(uv) != phi(u)phi(v) for u = " + u.to_string() +
                                ", v = " + v.to_string());
    }
    for (const UElement* x : {&u, &v}) {
        if (filtration_degree(apply(*x)) != filtration_degree(*x)) {
            throw VerificationError("phi does not preserve the filtration degree of " + x->to_string());
        }
    }
    ++products_checked_;
}

void TwistIsomorphism::verify(std::size_t random_samples, std::uint64_t seed) {
    constexpr std::size_t kBattery = 50;
    const std::size_t r = from_.rank();
    const std::size_t n = from_.nvars();
    std::vector<UElement> battery;
    for (std::size_t i = 0; i < r; ++i) battery.push_back(from_.generator(i));
    for (std::size_t k = 0; k < n; ++k) battery.push_back(from_.scalar(Poly::variable(n, k)));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            battery.push_back(Poly::variable(n, k) * from_.generator(i));
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < r; ++j) {
            battery.push_back(u_mul(from_, from_.generator(i), from_.generator(j)));
        }
    }
    if (battery.empty()) battery.push_back(from_.one());

    // Deterministic sweep over ordered pairs, cycling until the quota is met.
    std::size_t count = 0;
    for (std::size_t round = 0; count < kBattery; ++round) {
        for (std::size_t a = 0; a < battery.size() && count < kBattery; ++a) {
            const std::size_t b = (a + round) % battery.size();
            UElement v = battery[b];
            if (round >= battery.size()) v = u_mul(from_, v, battery[(a + 1) % battery.size()]);
            check_pair(battery[a], v);
            ++count;
        }
    }
    Rng rng(seed);
    for (std::size_t t = 0; t < random_samples; ++t) {
        check_pair(random_uelement(rng, from_, 2), random_uelement(rng, from_, 2));
    }
}

// ---------------------------------------------------------------------------

std::vector<Poly> u_module_action(const UPresentation& p, const Connection& conn, const UElement& u,
                                  const std::vector<Poly>& s) {
    const LieRinehartAlgebra& a = p.algebroid();
    p.require_element(u);
    require_connection(a, conn);
    if (s.size() != conn.rank) throw DimensionMismatch("section length differs from connection rank");
    if (a.rank() >= 2 && !has_curvature_type(a, conn, p.twist_cochain())) {
        throw PreconditionError("connection curvature is not of the presentation's twist type");
    }
    std::vector<Poly> out(conn.rank, Poly(a.nvars()));
    for (const auto& [beta, f] : u.terms()) {
        std::vector<Poly> v = s;
        for (std::size_t k = beta.size(); k-- > 0;) {
            for (std::uint32_t c = 0; c < beta[k]; ++c) {
                v = covariant_derivative(a, conn, LElement::basis(a.rank(), a.nvars(), k), v);
            }
        }
        for (std::size_t q = 0; q < out.size(); ++q) out[q] += f * v[q];
    }
    return out;
}

}  // namespace lrk
