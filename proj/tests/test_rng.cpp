#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "hyptess/linalg.hpp"
#include "hyptess/rng.hpp"
#include "hyptess/stats.hpp"

using namespace hyptess;

TEST_CASE("streams are reproducible and keyed") {
    rng::Stream a(42, 7, rng::Tag::Hyperplanes);
    rng::Stream b(42, 7, rng::Tag::Hyperplanes);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    std::set<std::uint64_t> keys;
    for (auto tag : {rng::Tag::Hyperplanes, rng::Tag::WindowExtension, rng::Tag::Points,
                     rng::Tag::Directions, rng::Tag::Walk, rng::Tag::Displacement,
                     rng::Tag::BetaPrime, rng::Tag::GridPhase, rng::Tag::Probe}) {
        keys.insert(rng::derive_key(42, 7, tag));
    }
    CHECK(keys.size() == 9);
    CHECK(rng::rep_seed(1, 0) != rng::rep_seed(1, 1));
    CHECK(rng::rep_seed(1, 0) != rng::rep_seed(2, 0));
}

TEST_CASE("uniform01 law") {
    rng::Stream s(123, 0, rng::Tag::Walk);
    std::vector<double> draws(20000);
    for (auto& d : draws) {
        d = s.uniform01();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
    }
    double p = stats::ks_test_pvalue(draws, [](double x) { return x; });
    CHECK(p > 1e-3);
}

TEST_CASE("normal moments") {
    rng::Stream s(5, 0, rng::Tag::Displacement);
    stats::Accumulator acc;
    std::size_t n = 50000;
    double m4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = s.normal();
        acc.add(z);
        m4 += z * z * z * z;
    }
    m4 /= static_cast<double>(n);
    CHECK(std::fabs(acc.mean()) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(acc.variance() == doctest::Approx(1.0).epsilon(0.05));
    CHECK(m4 == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("exponential law") {
    rng::Stream s(9, 3, rng::Tag::Points);
    std::vector<double> draws(20000);
    for (auto& d : draws) d = s.exponential(2.5);
    double p = stats::ks_test_pvalue(
        draws, [](double x) { return -std::expm1(-2.5 * x); });
    CHECK(p > 1e-3);
}

TEST_CASE("poisson mean and dispersion") {
    for (double mean : {0.5, 3.0, 25.0, 80.0}) {
        rng::Stream s(77, static_cast<std::uint64_t>(mean * 100), rng::Tag::Hyperplanes);
        stats::Accumulator acc;
        std::size_t n = 40000;
        for (std::size_t i = 0; i < n; ++i)
            acc.add(static_cast<double>(s.poisson(mean)));
        double se_mean = std::sqrt(mean / static_cast<double>(n));
        CHECK(std::fabs(acc.mean() - mean) < 4.5 * se_mean);
        // index of dispersion ~ 1 with SE about sqrt(2/n)
        double disp = acc.variance() / mean;
        CHECK(std::fabs(disp - 1.0) < 5.0 * std::sqrt(2.0 / static_cast<double>(n)));
    }
}

TEST_CASE("unit vectors are uniform directions") {
    rng::Stream s(31, 0, rng::Tag::Directions);
    int n = 5;
    std::size_t reps = 20000;
    stats::Accumulator first_coord;
    std::vector<double> coord(reps);
    for (std::size_t i = 0; i < reps; ++i) {
        Vec u = s.unit_vector(n);
        CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-12));
        first_coord.add(u[0]);
        coord[i] = u[0];
    }
    CHECK(std::fabs(first_coord.mean()) < 4.0 / std::sqrt(static_cast<double>(reps) * n));
    // E[u_1^2] = 1/n
    stats::Accumulator sq;
    for (double c : coord) sq.add(c * c);
    CHECK(sq.mean() == doctest::Approx(1.0 / n).epsilon(0.05));
}

TEST_CASE("points in ball") {
    rng::Stream s(13, 0, rng::Tag::Points);
    int n = 3;
    double radius = 2.0;
    std::size_t reps = 20000;
    std::vector<double> radial(reps);
    for (std::size_t i = 0; i < reps; ++i) {
        Vec x = s.point_in_ball(n, radius);
        double r = norm(x);
        CHECK(r <= radius * (1 + 1e-12));
        radial[i] = std::pow(r / radius, n);  // should be U(0,1)
    }
    double p = stats::ks_test_pvalue(radial, [](double x) { return x; });
    CHECK(p > 1e-3);
}
