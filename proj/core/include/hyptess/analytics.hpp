#pragma once

#include <string>

namespace hyptess::analytics {

// Dimension-scaling regime: intensity gamma_n = rho * n^alpha, data
// intensity lambda_n = n^{n(alpha-1)} e^{n*lambda_exp}, distortion radius
// R n^{3/2-alpha}, Gaussian scale sigma, sphere displacement delta.
struct ScalingConfig {
    double rho = 1.0;
    double alpha = 1.0;
    double lambda_exp = 0.0;
    double R = 1.0;
    double sigma = 1.0;
    double delta = 1.0;
};

// Quantities that overflow double for large n carry their logarithm.
struct LogValue {
    double log_value = 0.0;
    double value = 0.0; // exp(log_value); +inf past the double range
};

LogValue expected_zero_cell_volume(int n, double gamma);

struct MomentBounds {
    LogValue lower;
    LogValue upper;
};
// Gamma(n+1) kappa_n^k c_n^{-kn} <= E[V^k] <= Gamma(kn+1) kappa_n^k c_n^{-kn}.
MomentBounds zero_cell_moment_bounds(int n, double gamma, int k);

// sqrt(n) * (pi n (1+1/n)^{n/2} / (e gamma))^{2n}: the n,gamma-dependent
// factor bracketing Var[V(Z0)] up to absolute constants.
LogValue zero_cell_variance_bracket(int n, double gamma);

LogValue cell_intensity(int n, double gamma);          // cells per unit volume
LogValue expected_typical_cell_volume(int n, double gamma); // 1 / intensity

enum class SeparationKind {
    Contact,             // P(nearest plane farther than r) = e^{-2 gamma r}
    PointInZeroCell,     // P(x in Z0) = e^{-c_n |x|}
    SphereDisplacement,  // P(0, delta*u same cell) = e^{-c_n delta}
    TypicalInradiusCdf,  // P(inradius <= a) = 1 - e^{-2 gamma a}
    ManhattanSeparation, // P(x not in Z0, Manhattan) = 1 - e^{-(gamma/n)|x|_1}
};
SeparationKind separation_kind_from_name(const std::string& name);
std::string separation_kind_name(SeparationKind kind);
double separation_probability(int n, double gamma, SeparationKind kind, double arg);

// E[e^{-c_n |Y|}] for Y Gaussian with per-coordinate scale sigma, by
// adaptive quadrature against the chi_n density.
double gaussian_separation(int n, double gamma, double sigma);
// Its n->infinity value when gamma_n = rho*n^alpha with alpha = 0.
double gaussian_separation_limit(double rho, double sigma);

enum class RateKind {
    ZeroCellVolume,   // lim (1/n) ln E V(Z0), gamma_n = rho n
    TypicalCellVolume,
    PalmCount,        // lim (1/n) ln E N(Z0)
    ConditionalMax,   // exponent bound for P(max |x_i| >= R n^{3/2-alpha} | N>0)
};
RateKind rate_kind_from_name(const std::string& name);
std::string rate_kind_name(RateKind kind);
double rate_function(RateKind which, const ScalingConfig& cfg);

double zero_cell_rate_threshold();    // pi/sqrt(e)
double typical_cell_rate_threshold(); // 1/sqrt(e)
// rho* = e^lambda pi / sqrt(e): below it E N(Z0) diverges.
double poisson_near_rho_star(double lambda_exp);
// Intensity above which the conditional-max tail bound applies:
// sqrt(pi)/(R sqrt(2)) * max(lambda + ln(4 sqrt(2 pi e) R), 1).
double conditional_max_rho_upper(double R, double lambda_exp);

enum class VertexSide { Beyond, Within };
// Expected vertices of the zero cell farther (closer) than r from the origin.
double expected_vertices(int n, double gamma, double r, VertexSide side);

// P(n fixed heavy-tailed points span a hull facet with |offset| <= r) among
// m i.i.d. points; r may be +infinity.
double facet_probability(int n, int m, double sigma, double r);

// Bijection between the heavy-tailed point scale sigma and the hyperplane
// intensity gamma of the dual process, plus the dual intensity density over
// (direction, signed offset s).
double sigma_to_gamma(int n, double sigma);
double gamma_to_sigma(int n, double gamma);
double dual_intensity_density(int n, double sigma, double abs_s);

struct RhoThresholds {
    double x_lower = 0.0;  // roots of ln(pi) + ln(x) - x + 1
    double x_upper = 0.0;
    double rho_lower = 0.0; // x * sqrt(pi) / (R sqrt(2))
    double rho_upper = 0.0;
};
RhoThresholds rho_thresholds(double R);

struct PoissonDataExpectations {
    double log_expected_total = 0.0; // ln(lambda * E V(Z0))
    double expected_total = 0.0;
    double expected_outside = 0.0;   // total * Gamma_u(n, c_n R)
    double expected_inside = 0.0;
    double outside_fraction = 0.0;   // Gamma_u(n, c_n R)
    double jensen_lower_p_one = 0.0; // e^{-total} <= P(N(Z0) = 1) under Palm
};
PoissonDataExpectations poisson_data_expectations(int n, double gamma,
                                                  double lambda, double R);
PoissonDataExpectations poisson_data_expectations(const ScalingConfig& cfg, int n);

struct ComparisonRow {
    std::string model;
    LogValue zero_cell_volume;
    LogValue typical_cell_volume;
    double separation_coeff = 0.0;  // parameter of the separation law
    std::string separation_form;    // human-readable law
    double rms_uniform_norm = 0.0;  // sqrt E|Y|^2 for Y uniform in Z0
    bool rms_uniform_is_bound = false;
    double rms_r_max = 0.0;         // scale of the farthest vertex
    bool rms_r_max_is_bound = false;
};
ComparisonRow comparison_table(int n, double gamma, const std::string& model);

struct SectionExpectations {
    double gamma_m = 0.0;     // intensity induced on an m-flat
    LogValue expected_volume; // E V_m(Z0 cut to the flat)
    MomentBounds bounds;      // k-th moment bracket on the section
    int k = 1;
};
SectionExpectations section_expectations(int n, int m, double gamma, int k = 1);

} // namespace hyptess::analytics
