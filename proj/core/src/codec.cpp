#include "hyptess/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyptess/lp.hpp"
#include "hyptess/polygon2d.hpp"

namespace hyptess::codec {

namespace {

constexpr double kTieTol = 1e-12;

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace

CodeWord encode(const processes::TessellationSample& ts, const Vec& x) {
    if (static_cast<int>(x.size()) != ts.dim)
        throw std::invalid_argument("encode: point dimension mismatch");
    if (norm(x) > ts.window_r)
        throw std::invalid_argument("encode: point outside the certified window");
    CodeWord code;
    code.source_seed = ts.seed;
    code.bits.reserve(ts.hyperplanes.size());
    for (const processes::Hyperplane& h : ts.hyperplanes) {
        const double s = dot(h.normal, x) - h.offset;
        code.bits.push_back(s > kTieTol ? std::int8_t{1} : std::int8_t{-1});
    }
    return code;
}

cellgeom::HalfspaceSystem cell_of(const processes::TessellationSample& ts,
                                  const CodeWord& code) {
    if (code.bits.size() != ts.hyperplanes.size())
        throw std::invalid_argument("cell_of: code length != hyperplane count");
    if (code.source_seed != ts.seed)
        throw std::invalid_argument("cell_of: code bound to a different tessellation");
    cellgeom::HalfspaceSystem sys;
    const std::size_t m = ts.hyperplanes.size();
    const std::size_t n = static_cast<std::size_t>(ts.dim);
    sys.normals.reserve(m + 2 * n);
    sys.offsets.reserve(m + 2 * n);
    for (std::size_t i = 0; i < m; ++i) {
        const processes::Hyperplane& h = ts.hyperplanes[i];
        if (code.bits[i] > 0) {
            Vec neg(h.normal.size());
            for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -h.normal[j];
            sys.normals.push_back(std::move(neg));
            sys.offsets.push_back(-h.offset);
        } else {
            sys.normals.push_back(h.normal);
            sys.offsets.push_back(h.offset);
        }
    }
    sys.n_cell_rows = m;
    for (std::size_t j = 0; j < n; ++j) {
        for (double s : {1.0, -1.0}) {
            Vec e(n, 0.0);
            e[j] = s;
            sys.normals.push_back(std::move(e));
            sys.offsets.push_back(ts.window_r);
        }
    }
    return sys;
}

Vec decode_chebyshev(const processes::TessellationSample& ts, const CodeWord& code) {
    const cellgeom::HalfspaceSystem sys = cell_of(ts, code);
    lp::ChebyshevResult cr = lp::chebyshev_ball(sys.normals, sys.offsets);
    if (cr.status != lp::Status::Optimal)
        throw DecodeError("decode: Chebyshev LP did not converge");
    if (cr.radius <= kTieTol)
        throw DecodeError("decode: decoded cell is empty");
    return cr.center;
}

Vec decode_uniform(const processes::TessellationSample& ts, const CodeWord& code,
                   int steps, std::uint64_t seed) {
    if (steps < 1) throw std::invalid_argument("decode_uniform: steps >= 1 required");
    const cellgeom::HalfspaceSystem sys = cell_of(ts, code);
    lp::ChebyshevResult cr = lp::chebyshev_ball(sys.normals, sys.offsets);
    if (cr.status != lp::Status::Optimal)
        throw DecodeError("decode: Chebyshev LP did not converge");
    if (cr.radius <= kTieTol)
        throw DecodeError("decode: decoded cell is empty");
    rng::Stream stream(seed, 0, rng::Tag::Walk);
    return cellgeom::hit_and_run_system(sys, std::move(cr.center), steps, stream);
}

std::uint64_t code_hash(const CodeWord& code) {
    std::uint64_t h = 1469598103934665603ull ^ code.source_seed;
    for (std::int8_t b : code.bits) {
        h ^= static_cast<std::uint8_t>(b);
        h *= 1099511628211ull;
    }
    return h;
}

Decoder decoder_from_name(const std::string& name) {
    if (name == "chebyshev") return Decoder::Chebyshev;
    if (name == "uniform") return Decoder::Uniform;
    throw std::invalid_argument("unknown decoder '" + name + "' (chebyshev|uniform)");
}

std::string decoder_name(Decoder d) {
    return d == Decoder::Chebyshev ? "chebyshev" : "uniform";
}

DistortionResult distortion_experiment(processes::Model model, int n, double gamma,
                                       Decoder decoder, std::size_t trials,
                                       std::uint64_t seed,
                                       const DistortionOptions& opts) {
    if (trials < 1) throw std::invalid_argument("distortion_experiment: trials >= 1");
    if (n < 1 || !(gamma > 0.0))
        throw std::invalid_argument("distortion_experiment: n >= 1, gamma > 0");
    const double probe_r = opts.probe_radius > 0.0 ? opts.probe_radius : n / gamma;
    const double far_r = opts.far_r > 0.0 ? opts.far_r : n / gamma;
    const int steps = opts.walk_steps > 0 ? opts.walk_steps : 50 * n;
    const double window = std::max(10.0, 8.0 * n / gamma + probe_r);

    std::vector<double> dists;
    dists.reserve(trials);
    DistortionResult out;
    out.far_r = far_r;
    out.trials = trials;
    std::size_t excluded = 0;
    std::size_t far_count = 0;
    std::size_t far_valid = 0;

    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = rng::rep_seed(seed, t);
        processes::TessellationSample ts;
        switch (model) {
            case processes::Model::IsotropicPoisson:
                ts = processes::sample_isotropic(n, gamma, window, trial_seed);
                break;
            case processes::Model::ManhattanPoisson:
                ts = processes::sample_manhattan(n, gamma, window, trial_seed);
                break;
            case processes::Model::DeterministicGrid:
                ts = processes::grid(n, gamma, window, true, trial_seed);
                break;
        }
        rng::Stream probe(trial_seed, 0, rng::Tag::Probe);
        const Vec x = probe.point_in_ball(n, probe_r);
        Vec x_hat;
        CodeWord code;
        try {
            code = encode(ts, x);
            x_hat = (decoder == Decoder::Chebyshev)
                        ? decode_chebyshev(ts, code)
                        : decode_uniform(ts, code, steps, trial_seed);
        } catch (const DecodeError&) {
            ++excluded;
            continue;
        }
        Vec diff = x;
        axpy(diff, -1.0, x_hat);
        const double dist = norm(diff);
        dists.push_back(dist);
        const CodeWord recode = encode(ts, x_hat);
        if (recode.bits != code.bits) ++out.fixed_point_violations;

        if (n == 2) {
            // Exact cell of x, shifted so x is the origin; the farthest
            // vertex distance is then a plain vertex norm.
            const cellgeom::HalfspaceSystem sys = cell_of(ts, code);
            std::vector<std::array<double, 2>> normals;
            Vec offsets;
            normals.reserve(sys.normals.size());
            offsets.reserve(sys.normals.size());
            for (std::size_t i = 0; i < sys.normals.size(); ++i) {
                normals.push_back({sys.normals[i][0], sys.normals[i][1]});
                offsets.push_back(sys.offsets[i] - dot(sys.normals[i], x));
            }
            const polygon2d::Polygon poly =
                polygon2d::intersect(2.0 * window, normals, offsets);
            bool touches_box = poly.vertices.empty();
            const double edge = window * (1.0 - 1e-9);
            for (const auto& v : poly.vertices) {
                if (std::abs(v[0] + x[0]) >= edge || std::abs(v[1] + x[1]) >= edge) {
                    touches_box = true;
                    break;
                }
            }
            if (!touches_box) {
                ++far_valid;
                if (poly.r_max > far_r) ++far_count;
            }
        }
        if (opts.keep_trials)
            out.per_trial.push_back({x, x_hat, dist, code_hash(code)});
    }

    if (dists.empty())
        throw std::runtime_error("distortion_experiment: every trial failed to decode");
    out.mean = stats::summarize(dists, excluded);
    std::vector<double> sorted = dists;
    std::sort(sorted.begin(), sorted.end());
    out.median = quantile_sorted(sorted, 0.5);
    out.q10 = quantile_sorted(sorted, 0.1);
    out.q90 = quantile_sorted(sorted, 0.9);
    out.far_vertex_fraction =
        (n == 2 && far_valid > 0)
            ? static_cast<double>(far_count) / static_cast<double>(far_valid)
            : std::numeric_limits<double>::quiet_NaN();
    out.excluded_fraction =
        static_cast<double>(excluded) / static_cast<double>(trials);
    return out;
}

} // namespace hyptess::codec
