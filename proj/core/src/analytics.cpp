#include "hyptess/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyptess/quadrature.hpp"
#include "hyptess/specfun.hpp"

namespace hyptess::analytics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LogValue from_log(double lg) { return {lg, std::exp(lg)}; }

void check_ng(int n, double gamma, const char* who) {
    if (n < 1) throw std::invalid_argument(std::string(who) + ": n >= 1 required");
    if (!(gamma > 0.0)) throw std::invalid_argument(std::string(who) + ": gamma > 0 required");
}

// ln of c_n = 2*gamma*kappa_{n-1}/(n*kappa_n); kappa_0 = 1.
double log_c(int n, double gamma) {
    const double lk_prev = (n == 1) ? 0.0 : specfun::log_kappa(n - 1);
    return std::log(2.0) + std::log(gamma) + lk_prev -
           std::log(static_cast<double>(n)) - specfun::log_kappa(n);
}

double log_omega(int n) {
    return std::log(static_cast<double>(n)) + specfun::log_kappa(n);
}

} // namespace

LogValue expected_zero_cell_volume(int n, double gamma) {
    check_ng(n, gamma, "expected_zero_cell_volume");
    const double lg = std::lgamma(n + 1.0) + specfun::log_kappa(n) - n * log_c(n, gamma);
    return from_log(lg);
}

MomentBounds zero_cell_moment_bounds(int n, double gamma, int k) {
    check_ng(n, gamma, "zero_cell_moment_bounds");
    if (k < 1) throw std::invalid_argument("zero_cell_moment_bounds: k >= 1 required");
    const double common = k * specfun::log_kappa(n) -
                          static_cast<double>(k) * n * log_c(n, gamma);
    MomentBounds mb;
    mb.lower = from_log(std::lgamma(n + 1.0) + common);
    mb.upper = from_log(std::lgamma(static_cast<double>(k) * n + 1.0) + common);
    return mb;
}

LogValue zero_cell_variance_bracket(int n, double gamma) {
    check_ng(n, gamma, "zero_cell_variance_bracket");
    const double nn = static_cast<double>(n);
    const double inner = std::log(M_PI) + std::log(nn) +
                         0.5 * nn * std::log1p(1.0 / nn) - 1.0 - std::log(gamma);
    return from_log(0.5 * std::log(nn) + 2.0 * nn * inner);
}

LogValue cell_intensity(int n, double gamma) {
    check_ng(n, gamma, "cell_intensity");
    // kappa_n (gamma kappa_{n-1} / (n kappa_n))^n = kappa_n (c_n / 2)^n.
    const double lg = specfun::log_kappa(n) + n * (log_c(n, gamma) - std::log(2.0));
    return from_log(lg);
}

LogValue expected_typical_cell_volume(int n, double gamma) {
    return from_log(-cell_intensity(n, gamma).log_value);
}

SeparationKind separation_kind_from_name(const std::string& name) {
    if (name == "contact") return SeparationKind::Contact;
    if (name == "point_in_z0") return SeparationKind::PointInZeroCell;
    if (name == "sphere_displacement") return SeparationKind::SphereDisplacement;
    if (name == "typical_inradius_cdf") return SeparationKind::TypicalInradiusCdf;
    if (name == "manhattan_separation") return SeparationKind::ManhattanSeparation;
    throw std::invalid_argument("unknown separation kind '" + name + "'");
}

std::string separation_kind_name(SeparationKind kind) {
    switch (kind) {
        case SeparationKind::Contact: return "contact";
        case SeparationKind::PointInZeroCell: return "point_in_z0";
        case SeparationKind::SphereDisplacement: return "sphere_displacement";
        case SeparationKind::TypicalInradiusCdf: return "typical_inradius_cdf";
        case SeparationKind::ManhattanSeparation: return "manhattan_separation";
    }
    throw std::logic_error("separation_kind_name: unknown kind");
}

double separation_probability(int n, double gamma, SeparationKind kind, double arg) {
    check_ng(n, gamma, "separation_probability");
    if (!(arg >= 0.0)) throw std::invalid_argument("separation_probability: arg >= 0");
    switch (kind) {
        case SeparationKind::Contact:
            return std::exp(-2.0 * gamma * arg);
        case SeparationKind::PointInZeroCell:
        case SeparationKind::SphereDisplacement:
            return std::exp(-specfun::mean_chord_coeff(n, gamma) * arg);
        case SeparationKind::TypicalInradiusCdf:
            return -std::expm1(-2.0 * gamma * arg);
        case SeparationKind::ManhattanSeparation:
            return -std::expm1(-(gamma / n) * arg);
    }
    throw std::logic_error("separation_probability: unknown kind");
}

double gaussian_separation(int n, double gamma, double sigma) {
    check_ng(n, gamma, "gaussian_separation");
    if (!(sigma >= 0.0)) throw std::invalid_argument("gaussian_separation: sigma >= 0");
    if (sigma == 0.0) return 1.0;
    const double c = specfun::mean_chord_coeff(n, gamma);
    const double log_norm = (1.0 - 0.5 * n) * std::log(2.0) - std::lgamma(0.5 * n);
    const auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double lg = log_norm + (n - 1.0) * std::log(t) - 0.5 * t * t -
                          c * sigma * t;
        return std::exp(lg);
    };
    const double hi = std::sqrt(static_cast<double>(n)) + 40.0;
    return quadrature::integrate(integrand, 0.0, hi);
}

double gaussian_separation_limit(double rho, double sigma) {
    if (!(rho > 0.0) || !(sigma >= 0.0))
        throw std::invalid_argument("gaussian_separation_limit: rho > 0, sigma >= 0");
    return std::exp(-std::sqrt(2.0 / M_PI) * rho * sigma);
}

RateKind rate_kind_from_name(const std::string& name) {
    if (name == "zero_cell_volume") return RateKind::ZeroCellVolume;
    if (name == "typical_cell_volume") return RateKind::TypicalCellVolume;
    if (name == "palm_count") return RateKind::PalmCount;
    if (name == "conditional_max") return RateKind::ConditionalMax;
    throw std::invalid_argument("unknown rate kind '" + name + "'");
}

std::string rate_kind_name(RateKind kind) {
    switch (kind) {
        case RateKind::ZeroCellVolume: return "zero_cell_volume";
        case RateKind::TypicalCellVolume: return "typical_cell_volume";
        case RateKind::PalmCount: return "palm_count";
        case RateKind::ConditionalMax: return "conditional_max";
    }
    throw std::logic_error("rate_kind_name: unknown kind");
}

double rate_function(RateKind which, const ScalingConfig& cfg) {
    if (!(cfg.rho > 0.0)) throw std::invalid_argument("rate_function: rho > 0 required");
    switch (which) {
        case RateKind::ZeroCellVolume:
            return -std::log(cfg.rho) + std::log(M_PI) - 0.5;
        case RateKind::TypicalCellVolume:
            return -std::log(cfg.rho) - 0.5;
        case RateKind::PalmCount:
            return cfg.lambda_exp + std::log(M_PI) - std::log(cfg.rho) - 0.5;
        case RateKind::ConditionalMax:
            if (!(cfg.R > 0.0))
                throw std::invalid_argument("rate_function: R > 0 required");
            return cfg.lambda_exp + 0.5 * std::log(2.0 * M_PI * M_E) +
                   std::log(cfg.R) - std::sqrt(2.0) * cfg.rho * cfg.R / std::sqrt(M_PI) +
                   std::log(4.0);
    }
    throw std::logic_error("rate_function: unknown kind");
}

double zero_cell_rate_threshold() { return M_PI / std::sqrt(M_E); }
double typical_cell_rate_threshold() { return 1.0 / std::sqrt(M_E); }

double poisson_near_rho_star(double lambda_exp) {
    return std::exp(lambda_exp) * M_PI / std::sqrt(M_E);
}

double conditional_max_rho_upper(double R, double lambda_exp) {
    if (!(R > 0.0)) throw std::invalid_argument("conditional_max_rho_upper: R > 0");
    const double a = std::max(lambda_exp + 0.5 * std::log(2.0 * M_PI * M_E) +
                                  std::log(R) + std::log(4.0),
                              1.0);
    return std::sqrt(M_PI) / (R * std::sqrt(2.0)) * a;
}

double expected_vertices(int n, double gamma, double r, VertexSide side) {
    check_ng(n, gamma, "expected_vertices");
    if (!(r >= 0.0)) throw std::invalid_argument("expected_vertices: r >= 0 required");
    const double log_coeff = std::lgamma(0.5 * (n + 1.0)) + n * std::log(M_PI) -
                             0.5 * std::log(M_PI) - std::lgamma(0.5 * n + 1.0);
    // The radial argument is c_n * r: gamma * omega_{n+1} / (pi omega_n)
    // collapses to the separation coefficient.
    const double arg = specfun::mean_chord_coeff(n, gamma) * r;
    const double frac = (side == VertexSide::Beyond)
                            ? specfun::reg_gamma_upper(static_cast<double>(n), arg)
                            : specfun::reg_gamma_lower(static_cast<double>(n), arg);
    if (frac == 0.0) return 0.0;
    return std::exp(log_coeff + std::log(frac));
}

double facet_probability(int n, int m, double sigma, double r) {
    if (n < 1 || m <= n)
        throw std::invalid_argument("facet_probability: m > n >= 1 required");
    if (!(sigma > 0.0)) throw std::invalid_argument("facet_probability: sigma > 0");
    if (!(r > 0.0)) throw std::invalid_argument("facet_probability: r > 0 (or inf)");
    const double log_coeff = std::log(2.0) + std::lgamma(0.5 * (n + 1.0)) -
                             std::log(sigma) - std::lgamma(0.5 * n) -
                             0.5 * std::log(M_PI);
    const double coeff = std::exp(log_coeff);
    const double expo = -0.5 * (n + 1.0);
    const double pw = m - n;
    const auto integrand = [&](double t) {
        const double u = t / sigma;
        const double cdf = 0.5 + std::atan(u) / M_PI;
        return std::pow(1.0 + u * u, expo) * std::pow(cdf, pw);
    };
    double integral;
    if (std::isinf(r)) {
        integral = quadrature::integrate_real_line(integrand, sigma);
    } else {
        integral = quadrature::integrate(integrand, -r, r);
    }
    return coeff * integral;
}

double sigma_to_gamma(int n, double sigma) {
    if (n < 1 || !(sigma > 0.0))
        throw std::invalid_argument("sigma_to_gamma: n >= 1, sigma > 0 required");
    return sigma * std::exp(log_omega(n) - log_omega(n + 1));
}

double gamma_to_sigma(int n, double gamma) {
    if (n < 1 || !(gamma > 0.0))
        throw std::invalid_argument("gamma_to_sigma: n >= 1, gamma > 0 required");
    return gamma * std::exp(log_omega(n + 1) - log_omega(n));
}

double dual_intensity_density(int n, double sigma, double abs_s) {
    if (n < 1 || !(sigma > 0.0) || !(abs_s > 0.0))
        throw std::invalid_argument("dual_intensity_density: positive inputs required");
    return std::exp(std::log(2.0 * sigma) - log_omega(n + 1) -
                    (n + 1.0) * std::log(abs_s));
}

RhoThresholds rho_thresholds(double R) {
    if (!(R > 0.0)) throw std::invalid_argument("rho_thresholds: R > 0 required");
    const auto f = [](double x) { return std::log(M_PI) + std::log(x) - x + 1.0; };
    const auto bisect = [&](double lo, double hi) {
        // f > 0 somewhere in between; keep the sign change bracket.
        for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (f(lo) * f(mid) <= 0.0) hi = mid;
            else lo = mid;
        }
        return 0.5 * (lo + hi);
    };
    RhoThresholds t;
    t.x_lower = bisect(1e-12, 1.0);
    t.x_upper = bisect(1.0, 60.0);
    const double scale = std::sqrt(M_PI) / (R * std::sqrt(2.0));
    t.rho_lower = t.x_lower * scale;
    t.rho_upper = t.x_upper * scale;
    return t;
}

PoissonDataExpectations poisson_data_expectations(int n, double gamma,
                                                  double lambda, double R) {
    check_ng(n, gamma, "poisson_data_expectations");
    if (!(lambda > 0.0) || !(R > 0.0))
        throw std::invalid_argument("poisson_data_expectations: lambda, R > 0 required");
    PoissonDataExpectations out;
    out.log_expected_total =
        std::log(lambda) + expected_zero_cell_volume(n, gamma).log_value;
    out.expected_total = std::exp(out.log_expected_total);
    const double arg = specfun::mean_chord_coeff(n, gamma) * R;
    out.outside_fraction = specfun::reg_gamma_upper(static_cast<double>(n), arg);
    out.expected_outside = out.expected_total * out.outside_fraction;
    out.expected_inside =
        out.expected_total * specfun::reg_gamma_lower(static_cast<double>(n), arg);
    out.jensen_lower_p_one = std::exp(-out.expected_total);
    return out;
}

PoissonDataExpectations poisson_data_expectations(const ScalingConfig& cfg, int n) {
    const double nn = static_cast<double>(n);
    const double gamma_n = cfg.rho * std::pow(nn, cfg.alpha);
    const double log_lambda_n =
        nn * (cfg.alpha - 1.0) * std::log(nn) + nn * cfg.lambda_exp;
    // Assemble in logs; the struct's linear fields may overflow for large n.
    PoissonDataExpectations out;
    out.log_expected_total =
        log_lambda_n + expected_zero_cell_volume(n, gamma_n).log_value;
    out.expected_total = std::exp(out.log_expected_total);
    const double arg = specfun::mean_chord_coeff(n, gamma_n) * cfg.R *
                       std::pow(nn, 1.5 - cfg.alpha);
    out.outside_fraction = specfun::reg_gamma_upper(nn, arg);
    out.expected_outside = out.expected_total * out.outside_fraction;
    out.expected_inside = out.expected_total * specfun::reg_gamma_lower(nn, arg);
    out.jensen_lower_p_one = std::exp(-out.expected_total);
    return out;
}

ComparisonRow comparison_table(int n, double gamma, const std::string& model) {
    check_ng(n, gamma, "comparison_table");
    const double nn = static_cast<double>(n);
    const double n32 = std::pow(nn, 1.5);
    ComparisonRow row;
    row.model = model;
    if (model == "grid") {
        const double lv = nn * std::log(2.0 * nn / gamma);
        row.zero_cell_volume = from_log(lv);
        row.typical_cell_volume = from_log(lv);
        row.separation_coeff = nn / gamma;
        row.separation_form = "1{ |x|_inf >= n/gamma }";
        row.rms_uniform_norm = n32 / (std::sqrt(3.0) * gamma);
        row.rms_r_max = n32 / gamma;
    } else if (model == "manhattan") {
        row.zero_cell_volume = from_log(nn * std::log(2.0 * nn / gamma));
        row.typical_cell_volume = from_log(nn * std::log(nn / gamma));
        row.separation_coeff = gamma / nn;
        row.separation_form = "1 - exp(-(gamma/n) |x|_1)";
        row.rms_uniform_norm = n32 / gamma;
        row.rms_r_max = std::sqrt(3.5) * n32 / gamma;
    } else if (model == "isotropic") {
        row.zero_cell_volume = expected_zero_cell_volume(n, gamma);
        row.typical_cell_volume = expected_typical_cell_volume(n, gamma);
        row.separation_coeff = specfun::mean_chord_coeff(n, gamma);
        row.separation_form = "1 - exp(-c_n |x|)";
        row.rms_uniform_norm = std::sqrt(M_PI / 2.0) * n32 / gamma;
        row.rms_uniform_is_bound = true;
        row.rms_r_max = rho_thresholds(1.0).x_upper * std::sqrt(M_PI / 2.0) * n32 / gamma;
        row.rms_r_max_is_bound = true;
    } else {
        throw std::invalid_argument("comparison_table: model must be grid|manhattan|isotropic");
    }
    return row;
}

SectionExpectations section_expectations(int n, int m, double gamma, int k) {
    check_ng(n, gamma, "section_expectations");
    if (m < 1 || m >= n)
        throw std::invalid_argument("section_expectations: 1 <= m < n required");
    if (k < 1) throw std::invalid_argument("section_expectations: k >= 1 required");
    SectionExpectations out;
    out.k = k;
    out.gamma_m = gamma * std::exp(log_omega(m) + log_omega(n + 1) -
                                   log_omega(n) - log_omega(m + 1));
    // Gamma(m+1) kappa_m (pi omega_n / (gamma omega_{n+1}))^m, which equals
    // the m-dimensional zero-cell volume at the induced intensity.
    const double log_scale = std::log(M_PI) + log_omega(n) - std::log(gamma) -
                             log_omega(n + 1);
    out.expected_volume =
        from_log(std::lgamma(m + 1.0) + specfun::log_kappa(m) + m * log_scale);
    out.bounds = zero_cell_moment_bounds(m, out.gamma_m, k);
    return out;
}

} // namespace hyptess::analytics
