#pragma once

namespace hyptess::specfun {

// Constants for one dimension, all in log domain so no n in the supported
// range overflows intermediate products.
struct DimConstants {
    int n = 0;
    double log_kappa_n = 0.0;  // log volume of the unit n-ball
    double log_omega_n = 0.0;  // log surface area of the unit (n-1)-sphere, omega_n = n*kappa_n
};

// log of the unit-ball volume pi^{n/2}/Gamma(n/2+1).  1 <= n <= 10^4.
double log_kappa(int n);

DimConstants dim_constants(int n);

// Regularized incomplete gamma functions: upper Q(x,R) and lower P(x,R),
// Q + P = 1.  Series expansion for R < x+1, continued fraction otherwise,
// both capped at 200 iterations with 1e-14 relative tolerance.
double reg_gamma_upper(double x, double R);
double reg_gamma_lower(double x, double R);

// c_n = 2*gamma*kappa_{n-1}/(n*kappa_n); the exponential separation
// coefficient reused by every distance law: P(x in zero cell) = exp(-c_n|x|).
double mean_chord_coeff(int n, double gamma);

// ln(beta) - beta + 1: the large-n exponent of (1/n) ln Gamma_u(n, beta*n)
// for beta > 1 (and of the lower function for beta < 1).
double laplace_rate(double beta);

}  // namespace hyptess::specfun
