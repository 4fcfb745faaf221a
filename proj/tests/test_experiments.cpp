#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hyptess/analytics.hpp"
#include "hyptess/experiments.hpp"
#include "hyptess/processes.hpp"

using namespace hyptess;
using experiments::Metric;
using experiments::MetricSpec;
using experiments::RunOptions;

TEST_CASE("metric names round trip") {
    for (auto m : {Metric::ZeroVolume, Metric::InradiusCdf, Metric::PointInZ0,
                   Metric::GaussianSep, Metric::SphereSep, Metric::VerticesBeyond,
                   Metric::RMax, Metric::UniformNorm, Metric::PalmCount,
                   Metric::PalmMaxDistance}) {
        CHECK(experiments::metric_from_name(experiments::metric_name(m)) == m);
    }
    CHECK_THROWS(experiments::metric_from_name("perimeter"));
}

TEST_CASE("results do not depend on the thread count") {
    MetricSpec spec;
    spec.metric = Metric::ZeroVolume;
    RunOptions one, four;
    one.threads = 1;
    four.threads = 4;
    auto a = experiments::replicate_values(spec, processes::Model::IsotropicPoisson, 2,
                                           1.0, 400, 77, one);
    auto b = experiments::replicate_values(spec, processes::Model::IsotropicPoisson, 2,
                                           1.0, 400, 77, four);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
    CHECK(a.excluded == b.excluded);
}

TEST_CASE("interval volumes match the closed form") {
    MetricSpec spec;
    spec.metric = Metric::ZeroVolume;
    auto est = experiments::estimate(spec, processes::Model::IsotropicPoisson, 1, 2.0,
                                     20000, 5);
    // E V(Z0) in dimension one is 2/gamma
    double z = (est.mean - 1.0) / est.std_err;
    CHECK(std::fabs(z) < 3.5);

    auto oracle = experiments::metric_oracle(spec, processes::Model::IsotropicPoisson, 1, 2.0);
    REQUIRE(oracle.available);
    CHECK(oracle.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("membership metrics hit their oracles") {
    MetricSpec spec;
    spec.metric = Metric::PointInZ0;
    spec.param = 1.0;
    auto est = experiments::estimate(spec, processes::Model::IsotropicPoisson, 2, 1.0,
                                     20000, 11);
    auto oracle = experiments::metric_oracle(spec, processes::Model::IsotropicPoisson, 2, 1.0);
    REQUIRE(oracle.available);
    CHECK(oracle.value == doctest::Approx(0.5290778082677353).epsilon(1e-12));
    CHECK(std::fabs(est.mean - oracle.value) / est.std_err < 3.5);

    spec.metric = Metric::SphereSep;
    auto est2 = experiments::estimate(spec, processes::Model::IsotropicPoisson, 2, 1.0,
                                      20000, 12);
    CHECK(std::fabs(est2.mean - oracle.value) / est2.std_err < 3.5);

    // Manhattan separation at a fixed axis probe
    spec.metric = Metric::PointInZ0;
    auto man = experiments::estimate(spec, processes::Model::ManhattanPoisson, 2, 1.0,
                                     20000, 13);
    auto man_oracle =
        experiments::metric_oracle(spec, processes::Model::ManhattanPoisson, 2, 1.0);
    REQUIRE(man_oracle.available);
    CHECK(man_oracle.value == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(std::fabs(man.mean - man_oracle.value) / man.std_err < 3.5);
}

TEST_CASE("window budget exhaustion is loud") {
    MetricSpec spec;
    spec.metric = Metric::ZeroVolume;
    RunOptions opts;
    opts.window_r = 1.0;      // far too small for gamma = 0.05 cells
    opts.max_doublings = 0;   // and no budget to grow
    CHECK_THROWS_AS((void)experiments::estimate(spec, processes::Model::IsotropicPoisson,
                                                2, 0.05, 50, 3, opts),
                    std::runtime_error);
}

TEST_CASE("palm experiment matches the data expectations") {
    RunOptions opts;
    opts.threads = 2;
    auto res = experiments::palm_experiment(2, 1.0, 1.0, 1.0, 4000, 21, opts);
    CHECK(res.excluded_fraction < 1e-2);
    // E N(Z0) = lambda E V(Z0) = pi^3/2
    double z = (res.mean_count.mean - res.oracle.expected_total) / res.mean_count.std_err;
    CHECK(std::fabs(z) < 4.0);
    // fraction of data outside B(R): regularized upper gamma tail
    double zf = (res.outside_fraction.mean - res.oracle.outside_fraction) /
                res.outside_fraction.std_err;
    CHECK(std::fabs(zf) < 4.0);
    // Jensen: P(N = 1 | palm) >= e^{-E N}
    CHECK(res.p_exactly_one.mean + 3.0 * res.p_exactly_one.std_err >=
          res.oracle.jensen_lower_p_one);
    CHECK(res.conditional_defined);
}

TEST_CASE("sectional cut reproduces the induced line process") {
    RunOptions opts;
    opts.threads = 2;
    auto res = experiments::section_experiment(3, 1.0, 800, 31, opts);
    CHECK(res.gamma_m == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
    double zi = (res.line_intensity.mean - res.gamma_m) / res.line_intensity.std_err;
    CHECK(std::fabs(zi) < 4.0);
    double zv = (res.section_volume.mean - res.oracle.expected_volume.value) /
                res.section_volume.std_err;
    CHECK(std::fabs(zv) < 4.0);

    CHECK_THROWS(experiments::section_experiment(2, 1.0, 10, 1, opts));
}

TEST_CASE("sweeps converge to the dimension-free limit") {
    experiments::SweepSpec spec;
    spec.rho = 1.0;
    spec.alpha = 0.0;
    spec.n_list = {1, 2, 4, 8};
    spec.metric.metric = Metric::GaussianSep;
    spec.metric.param = 1.0;
    spec.reps = 4000;
    spec.master_seed = 7;
    RunOptions opts;
    opts.threads = 2;
    auto res = experiments::sweep(spec, opts);
    REQUIRE(res.rows.size() == 4);
    CHECK(res.has_limit);
    CHECK(res.limit == doctest::Approx(0.45028049832185049).epsilon(1e-12));
    CHECK(res.verdict == "approaches-limit");
    for (const auto& row : res.rows) {
        CHECK_FALSE(row.failed);
        CHECK(row.has_analytic);
        CHECK(std::fabs(row.z_score) < 4.0);
        CHECK(row.gamma == doctest::Approx(spec.rho).epsilon(1e-12));
    }
}

TEST_CASE("volume sweep carries the rate column") {
    experiments::SweepSpec spec;
    spec.rho = 1.0;
    spec.alpha = 1.0;
    spec.n_list = {1, 2, 3};
    spec.metric.metric = Metric::ZeroVolume;
    spec.reps = 1500;
    spec.master_seed = 9;
    RunOptions opts;
    opts.threads = 2;
    opts.k_dirs = 48;
    auto res = experiments::sweep(spec, opts);
    REQUIRE(res.rows.size() == 3);
    for (const auto& row : res.rows) {
        CHECK(row.has_rate);
        CHECK(row.has_analytic);
        CHECK_FALSE(row.failed);
    }
    // gamma_n = rho * n
    CHECK(res.rows[2].gamma == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("model comparison keeps grid rows exact") {
    RunOptions opts;
    opts.threads = 2;
    auto rows = experiments::compare_models(2, 1.0, 600, 17, opts);
    REQUIRE(rows.size() == 3);
    bool saw_grid = false;
    for (const auto& row : rows) {
        if (row.model == processes::Model::DeterministicGrid) {
            saw_grid = true;
            CHECK_FALSE(row.mc);
            CHECK(row.vol_est.mean ==
                  doctest::Approx(row.analytic.zero_cell_volume.value).epsilon(1e-12));
            CHECK(row.vol_est.std_err == 0.0);
            CHECK(row.rms_uniform ==
                  doctest::Approx(row.analytic.rms_uniform_norm).epsilon(1e-12));
        } else {
            CHECK(row.mc);
            CHECK(row.vol_est.reps > 0);
            double z = (row.vol_est.mean - row.analytic.zero_cell_volume.value) /
                       row.vol_est.std_err;
            CHECK(std::fabs(z) < 4.0);
        }
    }
    CHECK(saw_grid);
}

TEST_CASE("triangle facets are certain, quadrilaterals are not") {
    double inf = std::numeric_limits<double>::infinity();
    auto tri = experiments::facet_check(2, 3, 1.0, inf, 2000, 5);
    CHECK(tri.frequency == doctest::Approx(1.0));
    CHECK(tri.analytic == doctest::Approx(1.0));

    RunOptions opts;
    opts.threads = 2;
    auto quad = experiments::facet_check(2, 4, 1.0, inf, 20000, 6, opts);
    CHECK(quad.analytic == doctest::Approx(0.5947152654306489).epsilon(1e-12));
    double z = (quad.frequency - quad.analytic) / quad.std_err;
    CHECK(std::fabs(z) < 4.0);
}

TEST_CASE("worker exceptions surface on the calling thread") {
    MetricSpec spec;
    spec.metric = Metric::VerticesBeyond;  // dimension two only
    RunOptions opts;
    opts.threads = 4;
    CHECK_THROWS(experiments::estimate(spec, processes::Model::IsotropicPoisson, 3, 1.0,
                                       40, 2, opts));
}
