#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hyptess::stats {

// Streaming mean/variance (Welford); mergeable for parallel reduction.
class Accumulator {
  public:
    void add(double x);
    void merge(const Accumulator& other);
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    // Unbiased sample variance; 0 for fewer than two samples.
    double variance() const;
    double std_err() const;

  private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// Monte Carlo estimate with a 95% normal confidence interval.
struct EstimateWithCI {
    double mean = 0.0;
    double std_err = 0.0;  // NaN when undefined (reps < 2)
    std::size_t reps = 0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double excluded_fraction = 0.0;
    bool se_defined = false;
};

EstimateWithCI summarize(const std::vector<double>& values, std::size_t excluded = 0);

// Ratio estimator mean(x)/mean(y) with a delta-method standard error that
// accounts for the x-y covariance.
EstimateWithCI ratio_estimate(const std::vector<double>& num, const std::vector<double>& den);

// One-sample Kolmogorov-Smirnov test against a cdf given as sorted (value,
// cdf) evaluations of the sample points. Returns the asymptotic p-value
// (Marsaglia-Tsang-Wang form of the Kolmogorov distribution).
double ks_test_pvalue(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample chi-square homogeneity test on integer-valued data (counts are
// binned together, sparse tail bins pooled). Returns the p-value.
double chi2_two_sample_pvalue(const std::vector<std::uint64_t>& a,
                              const std::vector<std::uint64_t>& b);

// Kendall rank correlation of y against the index order 0..k-1; -1 means
// strictly decreasing, +1 strictly increasing.
double kendall_tau_vs_index(const std::vector<double>& y);

// Median of a sample (by copy; not streaming).
double median(std::vector<double> values);

double standard_normal_cdf(double x);

}  // namespace hyptess::stats
