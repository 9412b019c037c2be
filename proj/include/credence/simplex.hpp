#pragma once

// Exact phase-one simplex for equality-constrained feasibility:
//
//     does { x >= 0 : A x = b } have a member?
//
// Feasible instances return a point; infeasible instances return a Farkas
// vector y with  yᵀA <= 0  componentwise and  yᵀb > 0.  Bland's rule keeps
// the pivoting free of cycles. Problem sizes here are tiny (at most a few
// thousand columns and ~100 rows), so a dense rational tableau is fine.

#include <cstddef>
#include <utility>
#include <vector>

#include "credence/errors.hpp"
#include "credence/rational.hpp"

namespace credence {

struct FeasibilityOutcome {
    bool feasible = false;
    std::vector<Rational> point;  // x with A x = b, x >= 0 (feasible case)
    std::vector<Rational> farkas; // y with yᵀA <= 0, yᵀb > 0 (infeasible case)
};

inline FeasibilityOutcome solve_equality_feasibility(std::vector<std::vector<Rational>> a,
                                                     std::vector<Rational> b) {
    const std::size_t m = a.size();
    if (b.size() != m) throw DomainError("constraint matrix and right-hand side disagree");
    const std::size_t n = m == 0 ? 0 : a.front().size();
    for (const auto& row : a)
        if (row.size() != n) throw DomainError("ragged constraint matrix");

    // Normalize to b >= 0; remember flipped rows to map the certificate back.
    std::vector<bool> flipped(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) {
            flipped[i] = true;
            b[i] = -b[i];
            for (auto& v : a[i]) v = -v;
        }
    }

    // Tableau columns: n structural, m artificial, then the RHS.
    const std::size_t cols = n + m + 1;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][cols - 1] = b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Phase-one objective: minimize the artificial total. Reduced-cost row
    // r[j] = c_j - yᵀA_j with c = (0,...,0, 1,...,1); its RHS cell carries
    // yᵀb, the current objective value.
    std::vector<Rational> r(cols, Rational(0));
    for (std::size_t j = n; j < n + m; ++j) r[j] = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < cols; ++j) r[j] -= t[i][j];

    auto pivot = [&](std::size_t row, std::size_t col) {
        Rational inv = 1 / t[row][col];
        for (auto& v : t[row]) v *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || t[i][col] == 0) continue;
            Rational factor = t[i][col];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[row][j];
        }
        if (r[col] != 0) {
            Rational factor = r[col];
            for (std::size_t j = 0; j < cols; ++j) r[j] -= factor * t[row][j];
        }
        basis[row] = col;
    };

    while (true) {
        // Bland: entering column is the lowest-indexed one with r < 0.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (r[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        // Leaving row: minimum ratio, ties by lowest basic variable index.
        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][cols - 1] / t[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) throw DomainError("phase-one objective unbounded; constraints are broken");
        pivot(leave, enter);
    }

    FeasibilityOutcome out;
    // -r.back() equals yᵀb, the minimal artificial total.
    Rational objective = -r[cols - 1];
    if (objective == 0) {
        out.feasible = true;
        out.point.assign(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) out.point[basis[i]] = t[i][cols - 1];
        return out;
    }

    // Farkas certificate: y_i = c_art(i) - r_art(i) = 1 - r[n+i].
    out.feasible = false;
    out.farkas.assign(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        Rational y = 1 - r[n + i];
        out.farkas[i] = flipped[i] ? -y : y;
    }
    return out;
}

} // namespace credence
