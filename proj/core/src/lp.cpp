#include "hyptess/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace hyptess::lp {

namespace {

// Dense tableau for max-form simplex. Columns: structural variables first,
// then slacks, then (phase I only) artificials. Row `m` holds the reduced
// costs; column `ncols` holds the RHS.
struct Tableau {
    std::size_t m = 0;
    std::size_t ncols = 0;
    std::vector<Vec> rows;       // m rows of width ncols+1
    Vec obj;                      // width ncols+1, last entry = -z0
    std::vector<std::size_t> basis;

    double& at(std::size_t i, std::size_t j) { return rows[i][j]; }
    double rhs(std::size_t i) const { return rows[i][ncols]; }

    void pivot(std::size_t pr, std::size_t pc) {
        Vec& prow = rows[pr];
        const double piv = prow[pc];
        for (std::size_t j = 0; j <= ncols; ++j) prow[j] /= piv;
        prow[pc] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == pr) continue;
            const double f = rows[i][pc];
            if (f == 0.0) continue;
            Vec& r = rows[i];
            for (std::size_t j = 0; j <= ncols; ++j) r[j] -= f * prow[j];
            r[pc] = 0.0;
        }
        const double f = obj[pc];
        if (f != 0.0) {
            for (std::size_t j = 0; j <= ncols; ++j) obj[j] -= f * prow[j];
            obj[pc] = 0.0;
        }
        basis[pr] = pc;
    }

    // Bland: entering = smallest column index with positive reduced cost.
    // Returns ncols when optimal.
    std::size_t entering(double tol, std::size_t limit) const {
        for (std::size_t j = 0; j < limit; ++j)
            if (obj[j] > tol) return j;
        return ncols;
    }

    // Ratio test with Bland tie-break (smallest basis index among the rows
    // achieving the minimum ratio). Returns m when the column is unbounded.
    std::size_t leaving(std::size_t pc, double tol) const {
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double a = rows[i][pc];
            if (a > tol) best_ratio = std::min(best_ratio, rhs(i) / a);
        }
        if (!std::isfinite(best_ratio)) return m;
        const double slack = 1e-12 * (1.0 + std::abs(best_ratio));
        std::size_t best = m;
        for (std::size_t i = 0; i < m; ++i) {
            const double a = rows[i][pc];
            if (a <= tol) continue;
            if (rhs(i) / a <= best_ratio + slack &&
                (best == m || basis[i] < basis[best]))
                best = i;
        }
        return best;
    }
};

Status run_simplex(Tableau& t, double tol, int pivot_cap, int& pivots,
                   std::size_t col_limit) {
    for (;;) {
        const std::size_t pc = t.entering(tol, col_limit);
        if (pc == t.ncols) return Status::Optimal;
        const std::size_t pr = t.leaving(pc, tol);
        if (pr == t.m) return Status::Unbounded;
        if (++pivots > pivot_cap) return Status::PivotLimit;
        t.pivot(pr, pc);
    }
}

} // namespace

Result solve_max(const std::vector<Vec>& A, const Vec& b, const Vec& c,
                 double tol, int pivot_cap) {
    const std::size_t m = A.size();
    const std::size_t d = c.size();
    if (b.size() != m) throw std::invalid_argument("lp: |b| != rows of A");
    for (const Vec& row : A)
        if (row.size() != d)
            throw std::invalid_argument("lp: row width != |c|");

    // Free variables are split: x = xp - xm with xp, xm >= 0.
    const std::size_t n_struct = 2 * d;
    std::size_t n_art = 0;
    for (double bi : b)
        if (bi < 0.0) ++n_art;

    Tableau t;
    t.m = m;
    t.ncols = n_struct + m + n_art;
    t.rows.assign(m, Vec(t.ncols + 1, 0.0));
    t.obj.assign(t.ncols + 1, 0.0);
    t.basis.assign(m, 0);

    std::size_t art = n_struct + m;
    for (std::size_t i = 0; i < m; ++i) {
        const double sgn = (b[i] < 0.0) ? -1.0 : 1.0;
        for (std::size_t k = 0; k < d; ++k) {
            t.at(i, k) = sgn * A[i][k];
            t.at(i, d + k) = -sgn * A[i][k];
        }
        t.at(i, n_struct + i) = sgn;
        t.at(i, t.ncols) = sgn * b[i];
        if (sgn < 0.0) {
            t.at(i, art) = 1.0;
            t.basis[i] = art++;
        } else {
            t.basis[i] = n_struct + i;
        }
    }

    int pivots = 0;
    Result res;

    if (n_art > 0) {
        // Phase I: maximize -(sum of artificials); canonicalize by adding
        // every artificial row into the objective.
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < n_struct + m) continue;
            for (std::size_t j = 0; j <= t.ncols; ++j) t.obj[j] += t.rows[i][j];
        }
        for (std::size_t j = n_struct + m; j < t.ncols; ++j) t.obj[j] = 0.0;

        const Status st = run_simplex(t, tol, pivot_cap, pivots, t.ncols);
        if (st == Status::PivotLimit) {
            res.status = st;
            res.pivots = pivots;
            return res;
        }
        // Objective value is stored negated in the RHS cell.
        double infeas = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (t.basis[i] >= n_struct + m) infeas += t.rhs(i);
        if (infeas > 1e-7) {
            res.status = Status::Infeasible;
            res.pivots = pivots;
            return res;
        }
        // Drive any lingering zero-valued artificials out of the basis.
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < n_struct + m) continue;
            std::size_t pc = t.ncols;
            for (std::size_t j = 0; j < n_struct + m; ++j) {
                if (std::abs(t.rows[i][j]) > tol) {
                    pc = j;
                    break;
                }
            }
            if (pc == t.ncols) {
                // Redundant row: blank it so it can never pivot again.
                for (std::size_t j = 0; j <= t.ncols; ++j) t.rows[i][j] = 0.0;
                continue;
            }
            if (++pivots > pivot_cap) {
                res.status = Status::PivotLimit;
                res.pivots = pivots;
                return res;
            }
            t.pivot(i, pc);
        }
    }

    // Phase II objective on structural columns only.
    t.obj.assign(t.ncols + 1, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        t.obj[k] = c[k];
        t.obj[d + k] = -c[k];
    }
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t bj = t.basis[i];
        const double f = t.obj[bj];
        if (f == 0.0) continue;
        for (std::size_t j = 0; j <= t.ncols; ++j)
            t.obj[j] -= f * t.rows[i][j];
        t.obj[bj] = 0.0;
    }

    const Status st = run_simplex(t, tol, pivot_cap, pivots, n_struct + m);
    res.status = st;
    res.pivots = pivots;
    if (st != Status::Optimal) return res;

    Vec val(t.ncols, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < t.ncols) val[t.basis[i]] = t.rhs(i);
    res.x.assign(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) res.x[k] = val[k] - val[d + k];
    res.objective = dot(c, res.x);
    return res;
}

ChebyshevResult chebyshev_ball(const std::vector<Vec>& A, const Vec& b,
                               double tol, int pivot_cap) {
    const std::size_t m = A.size();
    if (m == 0) throw std::invalid_argument("lp: chebyshev of empty system");
    const std::size_t d = A.front().size();
    std::vector<Vec> rows(m, Vec(d + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < d; ++k) rows[i][k] = A[i][k];
        rows[i][d] = 1.0; // unit-norm rows: distance slack is additive
    }
    Vec obj(d + 1, 0.0);
    obj[d] = 1.0;
    Result r = solve_max(rows, b, obj, tol, pivot_cap);
    ChebyshevResult out;
    out.status = r.status;
    if (r.status == Status::Optimal) {
        out.center.assign(r.x.begin(), r.x.begin() + static_cast<long>(d));
        out.radius = r.x[d];
    }
    return out;
}

} // namespace hyptess::lp
