#include "lrkit/linalg.hpp"

#include <utility>

#include "lrkit/errors.hpp"

namespace lrk {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        const Rational inv = 1 / m[row][col];
        for (auto& v : m[row]) v *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational factor = m[r][col];
            for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= factor * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t matrix_rank(RationalMatrix m) {
    if (m.empty()) return 0;
    const std::size_t ncols = m.front().size();
    return row_reduce(m, ncols).size();
}

std::optional<std::vector<Rational>> solve_linear(RationalMatrix a, std::vector<Rational> b) {
    if (a.size() != b.size()) throw DimensionMismatch("linear system row count mismatch");
    const std::size_t ncols = a.empty() ? 0 : a.front().size();
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r].size() != ncols) throw DimensionMismatch("ragged linear system");
        a[r].push_back(b[r]);
    }
    const auto pivots = row_reduce(a, ncols);
    for (std::size_t r = pivots.size(); r < a.size(); ++r) {
        if (a[r][ncols] != 0) return std::nullopt;
    }
    std::vector<Rational> x(ncols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][ncols];
    return x;
}

}  // namespace lrk
