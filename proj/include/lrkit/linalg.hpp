#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lrkit/poly.hpp"

namespace lrk {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Rank over Q by exact Gaussian elimination.
std::size_t matrix_rank(RationalMatrix m);

/// Some solution x of A x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
std::optional<std::vector<Rational>> solve_linear(RationalMatrix a, std::vector<Rational> b);

}  // namespace lrk
