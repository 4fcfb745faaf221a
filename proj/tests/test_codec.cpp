#include <cmath>
#include <vector>

#include "doctest.h"
#include "hyptess/codec.hpp"
#include "hyptess/linalg.hpp"
#include "hyptess/processes.hpp"
#include "hyptess/rng.hpp"

using namespace hyptess;

TEST_CASE("encoding produces one bit per plane") {
    auto ts = processes::sample_isotropic(2, 1.0, 6.0, 5);
    Vec x = {0.4, -0.2};
    auto code = codec::encode(ts, x);
    CHECK(code.bits.size() == ts.hyperplanes.size());
    CHECK(code.source_seed == ts.seed);
    for (auto b : code.bits) CHECK((b == 1 || b == -1));
}

TEST_CASE("decoders are fixed points of the code map") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto ts = processes::sample_isotropic(2, 2.0, 6.0, seed);
        rng::Stream probe(seed, 0, rng::Tag::Probe);
        Vec x = probe.point_in_ball(2, 1.0);
        auto code = codec::encode(ts, x);

        Vec cheb = codec::decode_chebyshev(ts, code);
        auto code2 = codec::encode(ts, cheb);
        CHECK(code2.bits == code.bits);

        Vec uni = codec::decode_uniform(ts, code, 80, seed + 100);
        auto code3 = codec::encode(ts, uni);
        CHECK(code3.bits == code.bits);
    }
}

TEST_CASE("contradictory codes are rejected") {
    processes::TessellationSample ts;
    ts.dim = 2;
    ts.model = processes::Model::IsotropicPoisson;
    ts.gamma = 1.0;
    ts.window_r = 5.0;
    ts.seed = 7;
    ts.hyperplanes = {{{1.0, 0.0}, 0.3}, {{1.0, 0.0}, 0.7}};

    codec::CodeWord bad;
    bad.bits = {-1, 1};  // x1 < 0.3 and x1 > 0.7 cannot both hold
    bad.source_seed = 7;
    CHECK_THROWS_AS((void)codec::decode_chebyshev(ts, bad), codec::DecodeError);

    codec::CodeWord wrong_seed = codec::encode(ts, Vec{0.5, 0.0});
    wrong_seed.source_seed = 8;
    CHECK_THROWS(codec::decode_chebyshev(ts, wrong_seed));

    codec::CodeWord short_code;
    short_code.bits = {1};
    short_code.source_seed = 7;
    CHECK_THROWS(codec::decode_chebyshev(ts, short_code));
}

TEST_CASE("code hashes separate different bit strings") {
    codec::CodeWord a, b;
    a.bits = {1, -1, 1};
    b.bits = {1, 1, 1};
    a.source_seed = b.source_seed = 0;
    CHECK(codec::code_hash(a) != codec::code_hash(b));

    codec::CodeWord c = a;
    std::swap(c.bits[0], c.bits[1]);
    CHECK(codec::code_hash(a) != codec::code_hash(c));  // order matters
}

TEST_CASE("decoder names round trip") {
    CHECK(codec::decoder_from_name("chebyshev") == codec::Decoder::Chebyshev);
    CHECK(codec::decoder_from_name("uniform") == codec::Decoder::Uniform);
    CHECK_THROWS(codec::decoder_from_name("map"));
}

TEST_CASE("distortion shrinks as intensity grows") {
    codec::DistortionOptions opts;
    auto low = codec::distortion_experiment(processes::Model::IsotropicPoisson, 2, 2.0,
                                            codec::Decoder::Chebyshev, 300, 42, opts);
    auto high = codec::distortion_experiment(processes::Model::IsotropicPoisson, 2, 4.0,
                                             codec::Decoder::Chebyshev, 300, 43, opts);
    CHECK(low.fixed_point_violations == 0);
    CHECK(high.fixed_point_violations == 0);
    CHECK(low.excluded_fraction < 1e-2);
    CHECK(high.excluded_fraction < 1e-2);
    CHECK(low.trials == 300);
    CHECK(high.median < low.median);
    CHECK(low.q10 <= low.median);
    CHECK(low.median <= low.q90);
}

TEST_CASE("per-trial records are kept on request") {
    codec::DistortionOptions opts;
    opts.keep_trials = true;
    auto res = codec::distortion_experiment(processes::Model::ManhattanPoisson, 2, 2.0,
                                            codec::Decoder::Uniform, 50, 9, opts);
    CHECK(res.per_trial.size() == res.trials);
    for (const auto& t : res.per_trial) {
        Vec diff = t.x;
        axpy(diff, -1.0, t.x_hat);
        CHECK(norm(diff) == doctest::Approx(t.distortion).epsilon(1e-12));
    }
}
