#pragma once

#include "enumgeom/rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace enumgeom {

using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

/// x = particular + span(nullspace)
struct AffineSolution {
    RationalVector particular;
    std::vector<RationalVector> nullspace;
};

namespace detail {

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        Rational inv = m[row][col].inverse();
        for (auto& v : m[row]) v *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (std::size_t c = col; c < m[r].size(); ++c)
                if (!m[row][c].is_zero()) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

/// Solves A·x = b exactly. Returns nullopt when the system is inconsistent;
/// an empty nullspace means the solution is unique. `columns` is only
/// needed when A has no rows.
inline std::optional<AffineSolution> linear_solve(const RationalMatrix& a, const RationalVector& b,
                                                  std::optional<std::size_t> columns = std::nullopt) {
    if (a.size() != b.size()) throw std::invalid_argument("linear_solve: row count differs from rhs");
    std::size_t cols = a.empty() ? columns.value_or(0) : a.front().size();
    if (columns && *columns != cols) throw std::invalid_argument("linear_solve: column count mismatch");
    for (const auto& row : a)
        if (row.size() != cols) throw std::invalid_argument("linear_solve: ragged matrix");

    RationalMatrix aug = a;
    for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
    auto pivots = detail::rref(aug, cols);

    for (std::size_t r = pivots.size(); r < aug.size(); ++r)
        if (!aug[r][cols].is_zero()) return std::nullopt;

    AffineSolution sol;
    sol.particular.assign(cols, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = aug[i][cols];

    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(cols, Rational(0));
        v[free] = Rational(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -aug[i][free];
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

inline std::size_t matrix_rank(RationalMatrix m) {
    std::size_t cols = m.empty() ? 0 : m.front().size();
    return detail::rref(m, cols).size();
}

inline RationalVector mat_vec(const RationalMatrix& a, const RationalVector& x) {
    RationalVector out(a.size(), Rational(0));
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < x.size(); ++c)
            if (!a[r][c].is_zero() && !x[c].is_zero()) out[r] += a[r][c] * x[c];
    return out;
}

}  // namespace enumgeom
