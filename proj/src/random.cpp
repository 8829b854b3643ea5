#include "lrkit/random.hpp"

namespace lrk {

Poly Rng::poly(std::size_t nvars, unsigned max_degree, unsigned max_terms, bool allow_zero) {
    for (;;) {
        Poly p(nvars);
        const long nterms = uniform(1, static_cast<long>(max_terms));
        for (long t = 0; t < nterms; ++t) {
            Exponent e(nvars, 0);
            if (nvars > 0) {
                const long deg = uniform(0, static_cast<long>(max_degree));
                for (long d = 0; d < deg; ++d) {
                    e[static_cast<std::size_t>(uniform(0, static_cast<long>(nvars) - 1))] += 1;
                }
            }
            long c = uniform(-3, 3);
            if (c == 0) c = 1;
            p.add_term(e, Rational(c));
        }
        if (allow_zero || !p.is_zero()) return p;
    }
}

MultiIndex Rng::multi_index(std::size_t rank, unsigned degree) {
    MultiIndex beta(rank, 0);
    if (rank == 0) return beta;
    for (unsigned d = 0; d < degree; ++d) {
        beta[static_cast<std::size_t>(uniform(0, static_cast<long>(rank) - 1))] += 1;
    }
    return beta;
}

std::vector<Poly> Rng::section(std::size_t m, std::size_t nvars, unsigned max_degree) {
    std::vector<Poly> s;
    s.reserve(m);
    for (std::size_t i = 0; i < m; ++i) s.push_back(poly(nvars, max_degree, 3, true));
    return s;
}

}  // namespace lrk
