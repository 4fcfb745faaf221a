#include "hyptess/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hyptess::specfun {

namespace {

constexpr int kMaxIter = 200;
constexpr double kRelTol = 1e-14;

// log kappa_n extended to n = 0 (kappa_0 = 1) for internal ratios.
double log_kappa_any(int n) {
    if (n == 0) return 0.0;
    return 0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0);
}

// Lower series: P(a,x) = x^a e^{-x}/Gamma(a) * sum_k x^k / (a(a+1)...(a+k)).
// Valid for x < a+1 where terms decrease promptly.
double gamma_lower_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kRelTol) {
            return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
        }
    }
    throw std::runtime_error("reg_gamma: series did not converge (a=" + std::to_string(a) +
                             ", R=" + std::to_string(x) + ")");
}

// Upper continued fraction (modified Lentz): Q(a,x) for x >= a+1.
double gamma_upper_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kRelTol) {
            return h * std::exp(a * std::log(x) - x - std::lgamma(a));
        }
    }
    throw std::runtime_error("reg_gamma: continued fraction did not converge (a=" +
                             std::to_string(a) + ", R=" + std::to_string(x) + ")");
}

// Lower regularized value by whichever expansion is stable at (a, x).
double reg_lower_impl(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a) || !std::isfinite(x)) {
        throw std::invalid_argument("reg_gamma: need x > 0 finite and R >= 0 finite");
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_lower_series(a, x);
    return 1.0 - gamma_upper_cf(a, x);
}

}  // namespace

double log_kappa(int n) {
    // One past the documented 10^4 dimension cap: ratios kappa_{n+1}/kappa_n
    // appear in sectional intensities.
    if (n < 1 || n > 10001) {
        throw std::invalid_argument("log_kappa: n must be in [1, 10^4], got " + std::to_string(n));
    }
    return log_kappa_any(n);
}

DimConstants dim_constants(int n) {
    DimConstants c;
    c.n = n;
    c.log_kappa_n = log_kappa(n);
    c.log_omega_n = std::log(static_cast<double>(n)) + c.log_kappa_n;
    return c;
}

double reg_gamma_lower(double x, double R) { return reg_lower_impl(x, R); }

double reg_gamma_upper(double x, double R) {
    if (!(x > 0.0) || !(R >= 0.0) || !std::isfinite(x) || !std::isfinite(R)) {
        throw std::invalid_argument("reg_gamma: need x > 0 finite and R >= 0 finite");
    }
    if (R == 0.0) return 1.0;
    if (R < x + 1.0) return 1.0 - gamma_lower_series(x, R);
    return gamma_upper_cf(x, R);
}

double mean_chord_coeff(int n, double gamma) {
    if (n < 1) throw std::invalid_argument("mean_chord_coeff: n >= 1 required");
    if (!(gamma > 0.0)) throw std::invalid_argument("mean_chord_coeff: gamma > 0 required");
    // 2*gamma*kappa_{n-1}/(n*kappa_n), assembled in logs (kappa_0 = 1).
    double lg = std::log(2.0) + std::log(gamma) + log_kappa_any(n - 1) -
                std::log(static_cast<double>(n)) - log_kappa_any(n);
    return std::exp(lg);
}

double laplace_rate(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("laplace_rate: beta > 0 required");
    return std::log(beta) - beta + 1.0;
}

}  // namespace hyptess::specfun
