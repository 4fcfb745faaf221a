#include "hyptess/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "hyptess/specfun.hpp"

namespace hyptess::stats {

void Accumulator::add(double x) {
    ++n_;
    double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
}

void Accumulator::merge(const Accumulator& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    // Chan et al. parallel update.
    double d = other.mean_ - mean_;
    std::size_t n = n_ + other.n_;
    double nf = static_cast<double>(n);
    m2_ += other.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(other.n_) / nf;
    mean_ += d * static_cast<double>(other.n_) / nf;
    n_ = n;
}

double Accumulator::variance() const {
    if (n_ < 2) return 0.0;
    return m2_ / static_cast<double>(n_ - 1);
}

double Accumulator::std_err() const {
    if (n_ < 2) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(variance() / static_cast<double>(n_));
}

EstimateWithCI summarize(const std::vector<double>& values, std::size_t excluded) {
    Accumulator acc;
    for (double v : values) acc.add(v);
    EstimateWithCI e;
    e.reps = values.size();
    e.mean = acc.mean();
    e.excluded_fraction = (values.size() + excluded) == 0
                              ? 0.0
                              : static_cast<double>(excluded) /
                                    static_cast<double>(values.size() + excluded);
    if (values.size() >= 2) {
        e.std_err = acc.std_err();
        e.se_defined = true;
        e.ci_lo = e.mean - 1.96 * e.std_err;
        e.ci_hi = e.mean + 1.96 * e.std_err;
    } else {
        e.std_err = std::numeric_limits<double>::quiet_NaN();
        e.se_defined = false;
        e.ci_lo = e.ci_hi = e.mean;
    }
    return e;
}

EstimateWithCI ratio_estimate(const std::vector<double>& num, const std::vector<double>& den) {
    if (num.size() != den.size() || num.empty()) {
        throw std::invalid_argument("ratio_estimate: equal nonzero lengths required");
    }
    std::size_t n = num.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += num[i];
        my += den[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    if (my == 0.0) throw std::invalid_argument("ratio_estimate: zero denominator mean");
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = num[i] - mx;
        double dy = den[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    double nn = static_cast<double>(n) * std::max<double>(1.0, static_cast<double>(n - 1));
    double r = mx / my;
    // Delta method: Var(r) ~ (Vx - 2 r Cxy + r^2 Vy) / (n my^2).
    double var = (sxx - 2.0 * r * sxy + r * r * syy) / (nn * my * my);
    EstimateWithCI e;
    e.mean = r;
    e.reps = n;
    e.std_err = std::sqrt(std::max(0.0, var));
    e.se_defined = n >= 2;
    e.ci_lo = e.mean - 1.96 * e.std_err;
    e.ci_hi = e.mean + 1.96 * e.std_err;
    return e;
}

double ks_test_pvalue(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.size() < 8) throw std::invalid_argument("ks_test: sample too small");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double f = cdf(sample[i]);
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::fabs(f - lo), std::fabs(hi - f)));
    }
    // Asymptotic Kolmogorov tail with the small-sample correction.
    double t = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * (k % 2 == 1 ? 1.0 : -1.0) * std::exp(-2.0 * k * k * t * t);
        sum += term;
        if (std::fabs(term) < 1e-16) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double chi2_two_sample_pvalue(const std::vector<std::uint64_t>& a,
                              const std::vector<std::uint64_t>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("chi2: empty sample");
    std::map<std::uint64_t, std::pair<double, double>> bins;
    for (auto v : a) bins[v].first += 1.0;
    for (auto v : b) bins[v].second += 1.0;

    // Pool adjacent bins until each has a combined expected count >= 5.
    std::vector<std::pair<double, double>> pooled;
    double ca = 0.0, cb = 0.0;
    for (const auto& [value, counts] : bins) {
        ca += counts.first;
        cb += counts.second;
        if (ca + cb >= 10.0) {
            pooled.emplace_back(ca, cb);
            ca = cb = 0.0;
        }
    }
    if (ca + cb > 0.0) {
        if (pooled.empty()) {
            pooled.emplace_back(ca, cb);
        } else {
            pooled.back().first += ca;
            pooled.back().second += cb;
        }
    }
    if (pooled.size() < 2) return 1.0;  // everything in one bin: identical

    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double chi2 = 0.0;
    for (const auto& [oa, ob] : pooled) {
        double tot = oa + ob;
        double ea = tot * na / (na + nb);
        double eb = tot * nb / (na + nb);
        chi2 += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    }
    double df = static_cast<double>(pooled.size() - 1);
    return specfun::reg_gamma_upper(0.5 * df, 0.5 * chi2);
}

double kendall_tau_vs_index(const std::vector<double>& y) {
    if (y.size() < 2) throw std::invalid_argument("kendall_tau: need >= 2 points");
    long conc = 0, disc = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        for (std::size_t j = i + 1; j < y.size(); ++j) {
            if (y[j] > y[i]) ++conc;
            else if (y[j] < y[i]) ++disc;
        }
    }
    double total = 0.5 * static_cast<double>(y.size()) * static_cast<double>(y.size() - 1);
    return (static_cast<double>(conc) - static_cast<double>(disc)) / total;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty sample");
    std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    double hi = values[mid];
    if (values.size() % 2 == 1) return hi;
    std::nth_element(values.begin(), values.begin() + mid - 1, values.end());
    return 0.5 * (hi + values[mid - 1]);
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace hyptess::stats
