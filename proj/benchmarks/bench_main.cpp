#include <benchmark/benchmark.h>

#include "hyptess/cellgeom.hpp"
#include "hyptess/codec.hpp"
#include "hyptess/lp.hpp"
#include "hyptess/polygon2d.hpp"
#include "hyptess/processes.hpp"

namespace ht = hyptess;

static void BM_SampleIsotropic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto ts = ht::processes::sample_isotropic(n, 1.0, 16.0, seed++);
        benchmark::DoNotOptimize(ts.hyperplanes.data());
    }
}
BENCHMARK(BM_SampleIsotropic)->Arg(2)->Arg(10)->Arg(50);

static void BM_ClipPolygon(benchmark::State& state) {
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto ts = ht::processes::sample_isotropic(2, 1.0, 16.0, seed++);
        std::vector<ht::polygon2d::Point> normals;
        std::vector<double> offsets;
        for (const auto& h : ts.hyperplanes) {
            normals.push_back({h.normal[0], h.normal[1]});
            offsets.push_back(h.offset);
        }
        auto poly = ht::polygon2d::intersect(16.0, normals, offsets);
        benchmark::DoNotOptimize(poly.area);
    }
}
BENCHMARK(BM_ClipPolygon);

static void BM_ChebyshevBall(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto ts = ht::processes::sample_isotropic(n, 1.0, 8.0 * n, seed++);
        auto sys = ht::cellgeom::zero_cell_system(ts);
        auto ball = ht::lp::chebyshev_ball(sys.normals, sys.offsets);
        benchmark::DoNotOptimize(ball.radius);
    }
}
BENCHMARK(BM_ChebyshevBall)->Arg(3)->Arg(6);

static void BM_HitAndRun(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto ts = ht::processes::sample_isotropic(n, 1.0, 8.0 * n, 7);
    auto out = ht::cellgeom::certify(std::move(ts), 7);
    auto view = ht::cellgeom::view_of(out);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto y = ht::cellgeom::hit_and_run_uniform(view, 50 * n, seed++);
        benchmark::DoNotOptimize(y.data());
    }
}
BENCHMARK(BM_HitAndRun)->Arg(2)->Arg(5);

static void BM_EncodeDecode(benchmark::State& state) {
    auto ts = ht::processes::sample_isotropic(2, 1.0, 16.0, 11);
    ht::Vec x{0.3, -0.7};
    for (auto _ : state) {
        auto code = ht::codec::encode(ts, x);
        auto x_hat = ht::codec::decode_chebyshev(ts, code);
        benchmark::DoNotOptimize(x_hat.data());
    }
}
BENCHMARK(BM_EncodeDecode);

BENCHMARK_MAIN();
