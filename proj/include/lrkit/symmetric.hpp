#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "lrkit/graded.hpp"
#include "lrkit/lie_rinehart.hpp"
#include "lrkit/random.hpp"

namespace lrk {

/// Commutative product in S_O L.
SymElement sym_mul(const SymElement& s1, const SymElement& s2);

/// Poisson bracket on S_O L: {xi_i, xi_j} = [e_i, e_j], {xi_i, f} = a(e_i)(f),
/// {f, g} = 0, extended as a biderivation.
SymElement poisson_bracket(const LieRinehartAlgebra& a, const SymElement& s1, const SymElement& s2);

struct PoissonReport {
    bool passed = true;
    std::size_t trials = 0;
    std::string witness;
};

/// Antisymmetry, Leibniz {a, bc} = {a,b}c + b{a,c} and Jacobi on every
/// triple of degree-one generators and coordinates, then on `trials` random
/// triples of degree <= 3.
PoissonReport check_poisson_axioms(const LieRinehartAlgebra& a, std::size_t trials, std::uint64_t seed);

/// Same syntax as enveloping elements with sK atoms; products commute.
SymElement parse_symelement(std::string_view text, std::size_t rank, std::size_t nvars);

SymElement random_symelement(Rng& rng, std::size_t rank, std::size_t nvars, unsigned max_degree,
                             unsigned max_terms = 3);

}  // namespace lrk
