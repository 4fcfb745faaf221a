#pragma once

#include <functional>

namespace hyptess::quadrature {

// Adaptive Gauss-Kronrod (7-15 pair) with interval bisection.
// Splits until the embedded error estimate of each piece is below the
// tolerance share; throws on depth exhaustion.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 60);

// Integral over the whole line via the substitution t = scale * tan(theta),
// which maps (-pi/2, pi/2) onto R and tames Cauchy-type tails.
double integrate_real_line(const std::function<double(double)>& f, double scale,
                           double abs_tol = 1e-10, int max_depth = 60);

}  // namespace hyptess::quadrature
