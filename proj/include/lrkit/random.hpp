#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lrkit/poly.hpp"
#include "lrkit/text.hpp"

namespace lrk {

/// Seeded generator used by every randomized check.  Draws are computed
/// from raw mt19937_64 output so sequences do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(engine_() % span);
    }
    bool coin() { return (engine_() & 1u) != 0; }

    /// Polynomial with up to `max_terms` terms of total degree <= max_degree
    /// and small integer coefficients; possibly zero when allow_zero.
    Poly poly(std::size_t nvars, unsigned max_degree, unsigned max_terms, bool allow_zero = false);

    /// Multi-index of total degree exactly `degree` in `rank` letters.
    MultiIndex multi_index(std::size_t rank, unsigned degree);

    std::vector<Poly> section(std::size_t m, std::size_t nvars, unsigned max_degree);

private:
    std::mt19937_64 engine_;
};

}  // namespace lrk
