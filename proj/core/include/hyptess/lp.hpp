#pragma once

#include <vector>

#include "hyptess/linalg.hpp"

namespace hyptess::lp {

enum class Status {
    Optimal,
    Infeasible,
    Unbounded,
    PivotLimit,
};

struct Result {
    Status status = Status::PivotLimit;
    Vec x;                  // original (free) variables
    double objective = 0.0; // c.x at the returned point
    int pivots = 0;
};

// Maximize c.x subject to A x <= b with x unrestricted in sign.
// Dense two-phase simplex, Bland's rule throughout (no cycling).
Result solve_max(const std::vector<Vec>& A, const Vec& b, const Vec& c,
                 double tol = 1e-9, int pivot_cap = 10000);

// Largest ball inside {A x <= b} where every row of A has unit Euclidean
// norm. Returns (center, radius). The radius comes out negative when the
// system is empty (the LP itself is always feasible).
struct ChebyshevResult {
    Status status = Status::PivotLimit;
    Vec center;
    double radius = 0.0;
};
ChebyshevResult chebyshev_ball(const std::vector<Vec>& A, const Vec& b,
                               double tol = 1e-9, int pivot_cap = 10000);

} // namespace hyptess::lp
