#pragma once

#include <cmath>
#include <vector>

#include "subex/common.hpp"

namespace subex {

// Dense two-phase primal simplex for desk-scale programs.
//   maximize c^T x   subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
// Bland's rule throughout, so the method cannot cycle. Infeasible and
// unbounded programs are reported distinctly.

struct LinearProgram {
    std::vector<double> objective;
    std::vector<std::vector<double>> ineq_a;
    std::vector<double> ineq_b;
    std::vector<std::vector<double>> eq_a;
    std::vector<double> eq_b;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    double value = 0.0;
    std::vector<double> x;
};

namespace lp_detail {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;

struct Tableau {
    std::vector<std::vector<double>> rows;  // m x (ncols + 1), last entry rhs
    std::vector<double> zrow;               // reduced costs z_j - c_j, last entry -z
    std::vector<int> basis;
    int ncols = 0;

    void pivot(int r, int c) {
        double piv = rows[r][c];
        for (double& v : rows[r]) v /= piv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (int(i) == r) continue;
            double f = rows[i][c];
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        double f = zrow[c];
        if (f != 0.0)
            for (int j = 0; j <= ncols; ++j) zrow[j] -= f * rows[r][j];
        basis[r] = c;
    }

    // Bland: entering = smallest eligible index with negative reduced cost.
    bool iterate(const std::vector<bool>& allowed, bool& unbounded) {
        int enter = -1;
        for (int j = 0; j < ncols; ++j) {
            if (!allowed[j]) continue;
            if (zrow[j] < -kPivotTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return false;
        int leave = -1;
        double best = kInf;
        for (size_t i = 0; i < rows.size(); ++i) {
            double a = rows[i][enter];
            if (a > kPivotTol) {
                double ratio = rows[i][ncols] / a;
                if (ratio < best - 1e-12 ||
                    (ratio < best + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
                    best = ratio;
                    leave = int(i);
                }
            }
        }
        if (leave < 0) {
            unbounded = true;
            return false;
        }
        pivot(leave, enter);
        return true;
    }
};

}  // namespace lp_detail

inline LpResult lp_solve(const LinearProgram& prog) {
    using namespace lp_detail;
    const int n = int(prog.objective.size());
    const int m_ub = int(prog.ineq_a.size());
    const int m_eq = int(prog.eq_a.size());
    const int m = m_ub + m_eq;
    require(int(prog.ineq_b.size()) == m_ub && int(prog.eq_b.size()) == m_eq,
            "lp row/rhs size mismatch");

    // layout: [x (n)] [slack/surplus (m_ub)] [artificial (as needed)]
    int ncols = n + m_ub;
    std::vector<int> artificial_of(m, -1);
    std::vector<bool> flipped(m, false);
    for (int i = 0; i < m_ub; ++i)
        if (prog.ineq_b[i] < 0.0) flipped[i] = true;
    for (int i = 0; i < m; ++i) {
        bool needs_artificial = (i >= m_ub) || flipped[i];
        if (needs_artificial) artificial_of[i] = ncols++;
    }

    Tableau T;
    T.ncols = ncols;
    T.rows.assign(m, std::vector<double>(ncols + 1, 0.0));
    T.basis.assign(m, -1);
    for (int i = 0; i < m; ++i) {
        const auto& a = (i < m_ub) ? prog.ineq_a[i] : prog.eq_a[i - m_ub];
        double b = (i < m_ub) ? prog.ineq_b[i] : prog.eq_b[i - m_ub];
        require(int(a.size()) == n, "lp row width mismatch");
        double sgn = 1.0;
        if (i < m_ub && flipped[i]) sgn = -1.0;
        if (i >= m_ub && b < 0.0) sgn = -1.0;
        for (int j = 0; j < n; ++j) T.rows[i][j] = sgn * a[j];
        T.rows[i][ncols] = sgn * b;
        if (i < m_ub) T.rows[i][n + i] = sgn * 1.0;
        if (artificial_of[i] >= 0) {
            T.rows[i][artificial_of[i]] = 1.0;
            T.basis[i] = artificial_of[i];
        } else {
            T.basis[i] = n + i;
        }
    }

    std::vector<bool> is_artificial(ncols, false);
    bool any_artificial = false;
    for (int i = 0; i < m; ++i)
        if (artificial_of[i] >= 0) {
            is_artificial[artificial_of[i]] = true;
            any_artificial = true;
        }

    bool unbounded = false;
    if (any_artificial) {
        // phase 1: maximize -(sum of artificials)
        T.zrow.assign(ncols + 1, 0.0);
        for (int j = 0; j < ncols; ++j)
            if (is_artificial[j]) T.zrow[j] = 1.0;
        for (int i = 0; i < m; ++i)
            if (artificial_of[i] >= 0)
                for (int j = 0; j <= ncols; ++j) T.zrow[j] -= T.rows[i][j];
        std::vector<bool> allowed(ncols, true);
        int guard = 0;
        while (T.iterate(allowed, unbounded) && ++guard < 200000) {}
        if (-T.zrow[ncols] > kFeasTol) return {LpStatus::Infeasible, 0.0, {}};
        // drive remaining artificials out of the basis where possible
        for (int i = 0; i < m; ++i) {
            if (!is_artificial[T.basis[i]]) continue;
            for (int j = 0; j < ncols; ++j) {
                if (is_artificial[j]) continue;
                if (std::abs(T.rows[i][j]) > 1e-8) {
                    T.pivot(i, j);
                    break;
                }
            }
        }
    }

    // phase 2
    T.zrow.assign(ncols + 1, 0.0);
    for (int j = 0; j < n; ++j) T.zrow[j] = -prog.objective[j];
    for (int i = 0; i < m; ++i) {
        int b = T.basis[i];
        if (b < n && prog.objective[b] != 0.0)
            for (int j = 0; j <= ncols; ++j) T.zrow[j] += prog.objective[b] * T.rows[i][j];
    }
    std::vector<bool> allowed(ncols, true);
    for (int j = 0; j < ncols; ++j)
        if (is_artificial[j]) allowed[j] = false;
    unbounded = false;
    int guard = 0;
    while (T.iterate(allowed, unbounded) && ++guard < 200000) {}
    if (unbounded) return {LpStatus::Unbounded, 0.0, {}};

    LpResult res;
    res.status = LpStatus::Optimal;
    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (T.basis[i] < n) res.x[T.basis[i]] = T.rows[i][T.ncols];
    res.value = 0.0;
    for (int j = 0; j < n; ++j) res.value += prog.objective[j] * res.x[j];
    return res;
}

}  // namespace subex
