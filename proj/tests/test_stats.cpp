#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "hyptess/rng.hpp"
#include "hyptess/stats.hpp"

using namespace hyptess;

TEST_CASE("accumulator matches direct formulas") {
    std::vector<double> xs = {1.0, 2.5, -0.5, 4.0, 0.0, 3.25};
    stats::Accumulator acc;
    for (double x : xs) acc.add(x);

    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);

    CHECK(acc.count() == xs.size());
    CHECK(acc.mean() == doctest::Approx(mean).epsilon(1e-14));
    CHECK(acc.variance() == doctest::Approx(var).epsilon(1e-13));
    CHECK(acc.std_err() == doctest::Approx(std::sqrt(var / xs.size())).epsilon(1e-13));
}

TEST_CASE("merge equals pooled stream") {
    rng::Stream s(3, 0, rng::Tag::Walk);
    std::vector<double> xs(501);
    for (auto& x : xs) x = s.normal() * 2.0 + 1.0;

    stats::Accumulator all, left, right;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        all.add(xs[i]);
        (i < xs.size() / 2 ? left : right).add(xs[i]);
    }
    left.merge(right);
    CHECK(left.count() == all.count());
    CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-12));
    CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
}

TEST_CASE("summarize and confidence interval") {
    std::vector<double> xs = {1.0, 2.0, 3.0, 4.0, 5.0};
    auto est = stats::summarize(xs);
    CHECK(est.mean == doctest::Approx(3.0));
    CHECK(est.se_defined);
    CHECK(est.ci_hi - est.mean == doctest::Approx(1.96 * est.std_err).epsilon(1e-12));
    CHECK(est.mean - est.ci_lo == doctest::Approx(1.96 * est.std_err).epsilon(1e-12));

    auto single = stats::summarize(std::vector<double>{7.0});
    CHECK_FALSE(single.se_defined);
    CHECK(single.mean == doctest::Approx(7.0));
}

TEST_CASE("ratio estimate") {
    std::vector<double> num(400), den(400);
    rng::Stream s(17, 0, rng::Tag::Points);
    for (std::size_t i = 0; i < num.size(); ++i) {
        double d = 1.0 + s.uniform01();
        den[i] = d;
        num[i] = 0.5 * d;
    }
    auto est = stats::ratio_estimate(num, den);
    CHECK(est.mean == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(est.std_err < 1e-12);
}

TEST_CASE("ks test discriminates") {
    rng::Stream s(21, 0, rng::Tag::Walk);
    std::vector<double> xs(5000);
    for (auto& x : xs) x = s.uniform01();
    double p_good = stats::ks_test_pvalue(xs, [](double x) { return x; });
    CHECK(p_good > 1e-3);
    double p_bad = stats::ks_test_pvalue(xs, [](double x) {
        return std::min(1.0, std::max(0.0, x - 0.2));
    });
    CHECK(p_bad < 1e-6);
}

TEST_CASE("chi-square two-sample") {
    rng::Stream s(33, 0, rng::Tag::Points);
    std::vector<std::uint64_t> a(3000), b(3000), c(3000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = s.poisson(4.0);
        b[i] = s.poisson(4.0);
        c[i] = s.poisson(6.0);
    }
    CHECK(stats::chi2_two_sample_pvalue(a, b) > 1e-3);
    CHECK(stats::chi2_two_sample_pvalue(a, c) < 1e-6);
}

TEST_CASE("kendall tau against index") {
    std::vector<double> up = {1.0, 2.0, 3.0, 5.0, 8.0};
    std::vector<double> down = {9.0, 7.0, 4.0, 2.0, 1.0};
    CHECK(stats::kendall_tau_vs_index(up) == doctest::Approx(1.0));
    CHECK(stats::kendall_tau_vs_index(down) == doctest::Approx(-1.0));
}

TEST_CASE("median") {
    CHECK(stats::median(std::vector<double>{3.0, 1.0, 2.0}) == doctest::Approx(2.0));
    CHECK(stats::median(std::vector<double>{4.0, 1.0, 3.0, 2.0}) == doctest::Approx(2.5));
}

TEST_CASE("standard normal cdf") {
    CHECK(stats::standard_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(stats::standard_normal_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-10));
    CHECK(stats::standard_normal_cdf(2.0) + stats::standard_normal_cdf(-2.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
}
