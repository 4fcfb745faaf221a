#include "hyptess/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "hyptess/cellgeom.hpp"
#include "hyptess/linalg.hpp"
#include "hyptess/specfun.hpp"

namespace hyptess::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Deterministic for any worker count: slot i only ever depends on seed and i.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
    threads = std::max(1, threads);
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

processes::TessellationSample sample_by_model(processes::Model model, int n,
                                              double gamma, double window_r,
                                              std::uint64_t seed) {
    switch (model) {
        case processes::Model::IsotropicPoisson:
            return processes::sample_isotropic(n, gamma, window_r, seed);
        case processes::Model::ManhattanPoisson:
            return processes::sample_manhattan(n, gamma, window_r, seed);
        case processes::Model::DeterministicGrid:
            return processes::grid(n, gamma, window_r, true, seed);
    }
    throw std::logic_error("unknown model");
}

double geometric_window(int n, double gamma, const RunOptions& opts) {
    if (opts.window_r > 0.0) return opts.window_r;
    return std::max(10.0, 8.0 * n / gamma);
}

struct RepValue {
    double value = kNaN;
    bool excluded = false;
    bool conditioning_miss = false;
};

RepValue run_zero_volume(processes::Model model, int n, double gamma,
                         std::uint64_t seed_r, const RunOptions& opts) {
    auto ts = sample_by_model(model, n, gamma, geometric_window(n, gamma, opts), seed_r);
    if (n <= 2) {
        auto out = cellgeom::certify(std::move(ts), seed_r, opts.max_doublings);
        if (out.truncated) return {kNaN, true, false};
        if (n == 2) return {out.polygon->area, false, false};
        auto view = cellgeom::view_of(out);
        return {cellgeom::volume_radial_mc(view, 1, seed_r).mean, false, false};
    }
    // Radial Monte Carlo: extend the window until every ray closes strictly
    // inside it, which makes each per-direction radius exact.
    rng::Stream dirs_stream(seed_r, 0, rng::Tag::Directions);
    std::vector<Vec> dirs(static_cast<std::size_t>(opts.k_dirs));
    for (auto& u : dirs) u = dirs_stream.unit_vector(n);
    const double log_kn = specfun::log_kappa(n);
    for (int d = 0;;) {
        bool truncated = false;
        double sum = 0.0;
        for (const auto& u : dirs) {
            auto r = cellgeom::radial_function(ts, u);
            if (r.unbounded || r.window_truncated) {
                truncated = true;
                break;
            }
            sum += std::exp(log_kn + n * std::log(r.value));
        }
        if (!truncated) return {sum / static_cast<double>(dirs.size()), false, false};
        if (d >= opts.max_doublings) return {kNaN, true, false};
        ts = processes::extend_window(ts, 2.0 * ts.window_r,
                                      rng::rep_seed(seed_r, static_cast<std::uint64_t>(d)));
        ++d;
    }
}

RepValue run_inradius_cdf(const MetricSpec& spec, processes::Model model, int n,
                          double gamma, std::uint64_t seed_r, const RunOptions& opts) {
    // Planes at distance <= a decide the event, so a window of a+1 is exact.
    double window = std::max(opts.window_r, spec.param + 1.0);
    auto ts = sample_by_model(model, n, gamma, window, seed_r);
    auto ir = cellgeom::inradius(ts);
    bool hit = !ir.unbounded && ir.value <= spec.param;
    return {hit ? 1.0 : 0.0, false, false};
}

// Membership probes: only planes with offset < |x| can separate x from the
// origin, so sampling the window B(|x|) is exact.
RepValue run_membership(const MetricSpec& spec, processes::Model model, int n,
                        double gamma, std::uint64_t seed_r) {
    Vec x(static_cast<std::size_t>(n), 0.0);
    if (spec.metric == Metric::PointInZ0) {
        x[0] = spec.param;
    } else if (spec.metric == Metric::SphereSep) {
        rng::Stream ds(seed_r, 0, rng::Tag::Displacement);
        x = ds.unit_vector(n);
        scale_inplace(x, spec.param);
    } else {
        rng::Stream ds(seed_r, 0, rng::Tag::Displacement);
        x = ds.gaussian_vector(n, spec.param);
    }
    double r = norm(x);
    if (!(r > 0.0)) return {1.0, false, false};
    auto ts = sample_by_model(model, n, gamma, r, seed_r);
    return {cellgeom::in_zero_cell(ts, x) ? 1.0 : 0.0, false, false};
}

RepValue run_vertices_beyond(const MetricSpec& spec, processes::Model model, int n,
                             double gamma, std::uint64_t seed_r,
                             const RunOptions& opts) {
    auto ts = sample_by_model(model, n, gamma, geometric_window(n, gamma, opts), seed_r);
    auto out = cellgeom::certify(std::move(ts), seed_r, opts.max_doublings);
    if (out.truncated) return {kNaN, true, false};
    double count = 0.0;
    for (const auto& v : out.polygon->vertices) {
        if (std::hypot(v[0], v[1]) > spec.param) count += 1.0;
    }
    return {count, false, false};
}

RepValue run_r_max(processes::Model model, int n, double gamma,
                   std::uint64_t seed_r, const RunOptions& opts) {
    auto ts = sample_by_model(model, n, gamma, geometric_window(n, gamma, opts), seed_r);
    auto out = cellgeom::certify(std::move(ts), seed_r, opts.max_doublings);
    if (out.truncated) return {kNaN, true, false};
    auto view = cellgeom::view_of(out);
    try {
        return {cellgeom::r_max_estimate(view, opts.k_dirs, seed_r), false, false};
    } catch (const cellgeom::TruncationError&) {
        return {kNaN, true, false};
    }
}

RepValue run_uniform_norm(processes::Model model, int n, double gamma,
                          std::uint64_t seed_r, const RunOptions& opts) {
    auto ts = sample_by_model(model, n, gamma, geometric_window(n, gamma, opts), seed_r);
    auto out = cellgeom::certify(std::move(ts), seed_r, opts.max_doublings);
    if (out.truncated) return {kNaN, true, false};
    auto view = cellgeom::view_of(out);
    int steps = opts.walk_steps > 0 ? opts.walk_steps : 50 * n;
    Vec y = cellgeom::hit_and_run_uniform(view, steps, seed_r);
    return {dot(y, y), false, false};
}

struct PalmRep {
    double count = 0.0;
    double outside = 0.0;   // points of the cell beyond |x| = R
    double max_dist = 0.0;  // farthest cell point from the origin
    bool excluded = false;
};

PalmRep run_palm_rep(processes::Model model, int n, double gamma, double lambda,
                     double R, std::uint64_t seed_r, const RunOptions& opts) {
    auto ts = sample_by_model(model, n, gamma, geometric_window(n, gamma, opts), seed_r);
    auto out = cellgeom::certify(std::move(ts), seed_r, opts.max_doublings);
    if (out.truncated) return {0.0, 0.0, 0.0, true};
    double ball_r = out.certified_radius;
    if (n == 2) ball_r = out.polygon->r_max * (1.0 + 1e-12);
    auto pts = processes::sample_poisson_points(n, lambda, ball_r, seed_r);
    PalmRep rep;
    for (const auto& p : pts.points) {
        if (!cellgeom::in_zero_cell(out.ts, p)) continue;
        rep.count += 1.0;
        double d = norm(p);
        rep.max_dist = std::max(rep.max_dist, d);
        if (d > R) rep.outside += 1.0;
    }
    return rep;
}

RepValue run_one(const MetricSpec& spec, processes::Model model, int n, double gamma,
                 std::uint64_t seed_r, const RunOptions& opts) {
    switch (spec.metric) {
        case Metric::ZeroVolume:
            return run_zero_volume(model, n, gamma, seed_r, opts);
        case Metric::InradiusCdf:
            return run_inradius_cdf(spec, model, n, gamma, seed_r, opts);
        case Metric::PointInZ0:
        case Metric::GaussianSep:
        case Metric::SphereSep:
            return run_membership(spec, model, n, gamma, seed_r);
        case Metric::VerticesBeyond:
            return run_vertices_beyond(spec, model, n, gamma, seed_r, opts);
        case Metric::RMax:
            return run_r_max(model, n, gamma, seed_r, opts);
        case Metric::UniformNorm:
            return run_uniform_norm(model, n, gamma, seed_r, opts);
        case Metric::PalmCount:
        case Metric::PalmMaxDistance: {
            auto rep = run_palm_rep(model, n, gamma, spec.lambda, spec.param, seed_r, opts);
            if (rep.excluded) return {kNaN, true, false};
            if (spec.metric == Metric::PalmCount) return {rep.count, false, false};
            if (rep.count == 0.0) return {kNaN, false, true};
            return {rep.max_dist >= spec.param ? 1.0 : 0.0, false, false};
        }
    }
    throw std::logic_error("unknown metric");
}

void validate_run(const MetricSpec& spec, int n, double gamma, const RunOptions& opts) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (opts.k_dirs < 1) throw std::invalid_argument("k_dirs must be positive");
    if (spec.metric == Metric::VerticesBeyond && n != 2)
        throw std::invalid_argument("vertices_beyond requires dimension two");
    if ((spec.metric == Metric::PalmCount || spec.metric == Metric::PalmMaxDistance) &&
        !(spec.lambda > 0.0))
        throw std::invalid_argument("palm metrics require a positive data intensity");
}

double exp_or_zero(double log_value) { return std::exp(log_value); }

}  // namespace

Metric metric_from_name(const std::string& name) {
    if (name == "zero_volume") return Metric::ZeroVolume;
    if (name == "inradius_cdf") return Metric::InradiusCdf;
    if (name == "point_in_z0") return Metric::PointInZ0;
    if (name == "gaussian_sep") return Metric::GaussianSep;
    if (name == "sphere_sep") return Metric::SphereSep;
    if (name == "vertices_beyond") return Metric::VerticesBeyond;
    if (name == "r_max") return Metric::RMax;
    if (name == "uniform_norm") return Metric::UniformNorm;
    if (name == "palm_count") return Metric::PalmCount;
    if (name == "palm_max_distance") return Metric::PalmMaxDistance;
    throw std::invalid_argument("unknown metric: " + name);
}

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::ZeroVolume: return "zero_volume";
        case Metric::InradiusCdf: return "inradius_cdf";
        case Metric::PointInZ0: return "point_in_z0";
        case Metric::GaussianSep: return "gaussian_sep";
        case Metric::SphereSep: return "sphere_sep";
        case Metric::VerticesBeyond: return "vertices_beyond";
        case Metric::RMax: return "r_max";
        case Metric::UniformNorm: return "uniform_norm";
        case Metric::PalmCount: return "palm_count";
        case Metric::PalmMaxDistance: return "palm_max_distance";
    }
    throw std::logic_error("unknown metric");
}

ReplicateResult replicate_values(const MetricSpec& spec, processes::Model model,
                                 int n, double gamma, std::size_t reps,
                                 std::uint64_t seed, const RunOptions& opts) {
    validate_run(spec, n, gamma, opts);
    std::vector<RepValue> slots(reps);
    parallel_for(reps, opts.threads, [&](std::size_t i) {
        slots[i] = run_one(spec, model, n, gamma, rng::rep_seed(seed, i), opts);
    });
    ReplicateResult out;
    out.values.reserve(reps);
    for (const auto& s : slots) {
        if (s.excluded) {
            ++out.excluded;
        } else if (s.conditioning_miss) {
            ++out.conditioning_misses;
        } else {
            out.values.push_back(s.value);
        }
    }
    return out;
}

stats::EstimateWithCI estimate(const MetricSpec& spec, processes::Model model,
                               int n, double gamma, std::size_t reps,
                               std::uint64_t seed, const RunOptions& opts) {
    auto rr = replicate_values(spec, model, n, gamma, reps, seed, opts);
    double frac = reps > 0 ? static_cast<double>(rr.excluded) / static_cast<double>(reps)
                           : 0.0;
    if (rr.excluded > 0 && frac >= 1e-2) {
        throw std::runtime_error("estimate aborted: excluded fraction " +
                                 std::to_string(frac) + " for metric " +
                                 metric_name(spec.metric));
    }
    return stats::summarize(rr.values, rr.excluded);
}

OracleValue metric_oracle(const MetricSpec& spec, processes::Model model, int n,
                          double gamma) {
    using processes::Model;
    OracleValue out;
    const double a = spec.param;
    switch (spec.metric) {
        case Metric::ZeroVolume:
            if (model == Model::IsotropicPoisson) {
                out = {analytics::expected_zero_cell_volume(n, gamma).value, true, false};
            } else {
                out = {exp_or_zero(n * std::log(2.0 * n / gamma)), true, false};
            }
            break;
        case Metric::InradiusCdf:
            if (model == Model::DeterministicGrid) {
                out = {a >= n / gamma ? 1.0 : 0.0, true, false};
            } else {
                out = {-std::expm1(-2.0 * gamma * a), true, false};
            }
            break;
        case Metric::PointInZ0:
            if (model == Model::IsotropicPoisson) {
                out = {analytics::separation_probability(
                           n, gamma, analytics::SeparationKind::PointInZeroCell, a),
                       true, false};
            } else if (model == Model::ManhattanPoisson) {
                out = {std::exp(-gamma * a / n), true, false};
            } else {
                out = {a < n / gamma ? 1.0 : 0.0, true, false};
            }
            break;
        case Metric::GaussianSep:
            if (model == Model::IsotropicPoisson)
                out = {analytics::gaussian_separation(n, gamma, a), true, false};
            break;
        case Metric::SphereSep:
            if (model == Model::IsotropicPoisson)
                out = {analytics::separation_probability(
                           n, gamma, analytics::SeparationKind::PointInZeroCell, a),
                       true, false};
            break;
        case Metric::VerticesBeyond:
            if (model == Model::IsotropicPoisson && n == 2)
                out = {analytics::expected_vertices(n, gamma, a,
                                                    analytics::VertexSide::Beyond),
                       true, false};
            break;
        case Metric::RMax:
            if (model == Model::DeterministicGrid)
                out = {std::pow(n, 1.5) / gamma, true, false};
            break;
        case Metric::UniformNorm:
            if (model == Model::DeterministicGrid) {
                out = {n * n * n / (3.0 * gamma * gamma), true, false};
            } else if (model == Model::ManhattanPoisson) {
                out = {n * n * n / (gamma * gamma), true, false};
            }
            break;
        case Metric::PalmCount: {
            double vol;
            if (model == Model::IsotropicPoisson) {
                vol = analytics::expected_zero_cell_volume(n, gamma).value;
            } else {
                vol = exp_or_zero(n * std::log(2.0 * n / gamma));
            }
            out = {spec.lambda * vol, true, false};
            break;
        }
        case Metric::PalmMaxDistance:
            break;
    }
    return out;
}

PalmResult palm_experiment(int n, double gamma, double lambda, double R,
                           std::size_t reps, std::uint64_t seed,
                           const RunOptions& opts) {
    MetricSpec spec{Metric::PalmCount, R, lambda};
    validate_run(spec, n, gamma, opts);
    if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
    std::vector<PalmRep> slots(reps);
    parallel_for(reps, opts.threads, [&](std::size_t i) {
        slots[i] = run_palm_rep(processes::Model::IsotropicPoisson, n, gamma, lambda,
                                R, rng::rep_seed(seed, i), opts);
    });
    std::vector<double> counts, ones, cond, outside;
    std::size_t excluded = 0;
    counts.reserve(reps);
    ones.reserve(reps);
    outside.reserve(reps);
    for (const auto& s : slots) {
        if (s.excluded) {
            ++excluded;
            continue;
        }
        counts.push_back(s.count);
        // N(Z0) = 1 under the point-at-origin conditioning means no other
        // data point falls in the cell.
        ones.push_back(s.count == 0.0 ? 1.0 : 0.0);
        outside.push_back(s.outside);
        if (s.count > 0.0) cond.push_back(s.max_dist >= R ? 1.0 : 0.0);
    }
    double frac = reps > 0 ? static_cast<double>(excluded) / static_cast<double>(reps)
                           : 0.0;
    if (excluded > 0 && frac >= 1e-2)
        throw std::runtime_error("palm experiment aborted: excluded fraction " +
                                 std::to_string(frac));
    PalmResult out;
    out.mean_count = stats::summarize(counts, excluded);
    out.p_exactly_one = stats::summarize(ones, excluded);
    out.conditional_max = stats::summarize(cond);
    out.conditioning_events = cond.size();
    out.conditional_defined = !cond.empty();
    out.outside_fraction = stats::ratio_estimate(outside, counts);
    out.oracle = analytics::poisson_data_expectations(n, gamma, lambda, R);
    out.excluded_fraction = frac;
    return out;
}

SectionResult section_experiment(int n, double gamma, std::size_t reps,
                                 std::uint64_t seed, const RunOptions& opts) {
    if (n < 3) throw std::invalid_argument("section experiment needs dimension >= 3");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    const int m = 2;
    auto oracle = analytics::section_expectations(n, m, gamma, 1);
    double window = opts.window_r > 0.0
                        ? opts.window_r
                        : std::max(10.0, 8.0 * m / oracle.gamma_m);
    std::vector<Vec> basis(m, Vec(static_cast<std::size_t>(n), 0.0));
    basis[0][0] = 1.0;
    basis[1][1] = 1.0;

    struct Slot {
        double intensity = 0.0;
        double area = 0.0;
        bool excluded = false;
    };
    std::vector<Slot> slots(reps);
    parallel_for(reps, opts.threads, [&](std::size_t i) {
        std::uint64_t seed_r = rng::rep_seed(seed, i);
        auto ts = processes::sample_isotropic(n, gamma, window, seed_r);
        auto section = cellgeom::intersect_with_subspace(ts, basis);
        slots[i].intensity =
            static_cast<double>(section.hyperplanes.size()) / (2.0 * section.window_r);
        // The induced process is itself isotropic Poisson, so extending the
        // section with fresh layers reproduces the right law exactly.
        auto out = cellgeom::certify(std::move(section), seed_r, opts.max_doublings);
        if (out.truncated) {
            slots[i].excluded = true;
            return;
        }
        slots[i].area = out.polygon->area;
    });

    std::vector<double> intensities, areas;
    std::size_t excluded = 0;
    for (const auto& s : slots) {
        intensities.push_back(s.intensity);
        if (s.excluded) {
            ++excluded;
        } else {
            areas.push_back(s.area);
        }
    }
    double frac = reps > 0 ? static_cast<double>(excluded) / static_cast<double>(reps)
                           : 0.0;
    if (excluded > 0 && frac >= 1e-2)
        throw std::runtime_error("section experiment aborted: excluded fraction " +
                                 std::to_string(frac));
    SectionResult out;
    out.line_intensity = stats::summarize(intensities);
    out.section_volume = stats::summarize(areas, excluded);
    out.gamma_m = oracle.gamma_m;
    out.oracle = oracle;
    out.excluded_fraction = frac;
    return out;
}

SweepResult sweep(const SweepSpec& spec, const RunOptions& opts) {
    SweepResult out;
    out.rows.reserve(spec.n_list.size());
    for (std::size_t i = 0; i < spec.n_list.size(); ++i) {
        SweepRow row;
        row.n = spec.n_list[i];
        row.gamma = spec.rho * std::pow(static_cast<double>(row.n), spec.alpha);
        try {
            row.est = estimate(spec.metric, spec.model, row.n, row.gamma, spec.reps,
                               rng::rep_seed(spec.master_seed, i), opts);
        } catch (const std::exception& e) {
            row.failed = true;
            row.note = e.what();
        }
        auto oracle = metric_oracle(spec.metric, spec.model, row.n, row.gamma);
        if (oracle.available) {
            row.analytic = oracle.value;
            row.has_analytic = true;
            if (!row.failed && row.est.se_defined && row.est.std_err > 0.0)
                row.z_score = (row.est.mean - oracle.value) / row.est.std_err;
        }
        if (spec.metric.metric == Metric::ZeroVolume && spec.alpha == 1.0) {
            analytics::ScalingConfig cfg;
            cfg.rho = spec.rho;
            cfg.alpha = spec.alpha;
            row.rate = analytics::rate_function(analytics::RateKind::ZeroCellVolume, cfg);
            row.has_rate = true;
        }
        out.rows.push_back(std::move(row));
    }

    // Trend sequence toward the scaling limit, when the metric has one.
    std::vector<double> seq;
    bool seq_complete = true;
    auto push_seq = [&](const SweepRow& row, double v) {
        if (std::isfinite(v)) {
            seq.push_back(v);
        } else {
            seq_complete = false;
        }
    };
    if (spec.metric.metric == Metric::ZeroVolume && spec.alpha == 1.0) {
        out.has_limit = true;
        analytics::ScalingConfig cfg;
        cfg.rho = spec.rho;
        out.limit = analytics::rate_function(analytics::RateKind::ZeroCellVolume, cfg);
        for (const auto& row : out.rows)
            push_seq(row, row.has_analytic ? std::log(row.analytic) / row.n : kNaN);
    } else if (spec.metric.metric == Metric::GaussianSep && spec.alpha == 0.0) {
        out.has_limit = true;
        out.limit = analytics::gaussian_separation_limit(spec.rho, spec.metric.param);
        for (const auto& row : out.rows)
            push_seq(row, row.has_analytic ? row.analytic : kNaN);
    } else if ((spec.metric.metric == Metric::PointInZ0 ||
                spec.metric.metric == Metric::SphereSep) &&
               spec.alpha == 0.5) {
        out.has_limit = true;
        out.limit = std::exp(-std::sqrt(2.0 / M_PI) * spec.rho * spec.metric.param);
        for (const auto& row : out.rows)
            push_seq(row, row.has_analytic ? row.analytic : kNaN);
    }

    if (out.has_limit && seq_complete && seq.size() >= 2) {
        std::vector<double> gap(seq.size());
        for (std::size_t i = 0; i < seq.size(); ++i) gap[i] = std::fabs(seq[i] - out.limit);
        out.kendall_tau = stats::kendall_tau_vs_index(gap);
        out.verdict = out.kendall_tau < 0.0 ? "approaches-limit" : "mixed";
    } else if (out.has_limit) {
        out.verdict = "incomplete";
    } else {
        std::vector<double> means;
        for (const auto& row : out.rows)
            if (!row.failed) means.push_back(row.est.mean);
        if (means.size() >= 2) {
            out.kendall_tau = stats::kendall_tau_vs_index(means);
            if (out.kendall_tau > 0.999) {
                out.verdict = "monotone-increasing";
            } else if (out.kendall_tau < -0.999) {
                out.verdict = "monotone-decreasing";
            } else {
                out.verdict = "mixed";
            }
        } else {
            out.verdict = "no-limit";
        }
    }
    return out;
}

std::vector<ModelComparisonRow> compare_models(int n, double gamma, std::size_t reps,
                                               std::uint64_t seed,
                                               const RunOptions& opts) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    const double probe = 0.5 * n / gamma;  // |x| of the on-axis probe point

    std::vector<ModelComparisonRow> rows;
    auto exact_estimate = [](double v) {
        stats::EstimateWithCI e;
        e.mean = v;
        e.std_err = 0.0;
        e.reps = 0;
        e.ci_lo = v;
        e.ci_hi = v;
        e.se_defined = true;
        return e;
    };

    using processes::Model;
    const Model order[] = {Model::IsotropicPoisson, Model::ManhattanPoisson,
                           Model::DeterministicGrid};
    std::uint64_t stream_index = 0;
    for (Model model : order) {
        ModelComparisonRow row;
        row.model = model;
        row.analytic = analytics::comparison_table(n, gamma, processes::model_name(model));
        if (model == Model::DeterministicGrid) {
            // Grid cells are deterministic boxes; report the closed forms.
            row.mc = false;
            row.vol_est = exact_estimate(std::exp(n * std::log(2.0 * n / gamma)));
            row.sep_est = exact_estimate(probe < n / gamma ? 0.0 : 1.0);
            row.sep_analytic = row.sep_est.mean;
            row.uniform_sq_est = exact_estimate(n * n * n / (3.0 * gamma * gamma));
            row.rms_uniform = row.analytic.rms_uniform_norm;
            row.rms_uniform_se = 0.0;
            row.r_max_sq_est = exact_estimate(n * n * n / (gamma * gamma));
            row.rms_r_max = row.analytic.rms_r_max;
            row.rms_r_max_se = 0.0;
            rows.push_back(std::move(row));
            continue;
        }
        row.mc = true;
        auto run = [&](const MetricSpec& mspec) {
            return replicate_values(mspec, model, n, gamma, reps,
                                    rng::rep_seed(seed, stream_index++), opts);
        };
        auto vol = run({Metric::ZeroVolume, 0.0, 1.0});
        auto in_cell = run({Metric::PointInZ0, probe, 1.0});
        auto usq = run({Metric::UniformNorm, 0.0, 1.0});
        auto rmax = run({Metric::RMax, 0.0, 1.0});
        for (auto& v : rmax.values) v *= v;
        for (auto& v : in_cell.values) v = 1.0 - v;

        row.vol_est = stats::summarize(vol.values, vol.excluded);
        row.sep_est = stats::summarize(in_cell.values, in_cell.excluded);
        auto member = metric_oracle({Metric::PointInZ0, probe, 1.0}, model, n, gamma);
        row.sep_analytic = 1.0 - member.value;
        row.uniform_sq_est = stats::summarize(usq.values, usq.excluded);
        row.rms_uniform = std::sqrt(row.uniform_sq_est.mean);
        row.rms_uniform_se = row.uniform_sq_est.se_defined && row.rms_uniform > 0.0
                                 ? row.uniform_sq_est.std_err / (2.0 * row.rms_uniform)
                                 : kNaN;
        row.r_max_sq_est = stats::summarize(rmax.values, rmax.excluded);
        row.rms_r_max = std::sqrt(row.r_max_sq_est.mean);
        row.rms_r_max_se = row.r_max_sq_est.se_defined && row.rms_r_max > 0.0
                               ? row.r_max_sq_est.std_err / (2.0 * row.rms_r_max)
                               : kNaN;
        row.excluded_fraction = std::max(
            {row.vol_est.excluded_fraction, row.sep_est.excluded_fraction,
             row.uniform_sq_est.excluded_fraction, row.r_max_sq_est.excluded_fraction});
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

// Unit normal and offset of the hyperplane through pts[0..n-1]; false on an
// affinely dependent tuple.
bool facet_hyperplane(const std::vector<Vec>& pts, int n, Vec& u, double& t) {
    if (n == 1) {
        u.assign(1, 1.0);
        t = pts[0][0];
        return true;
    }
    const int rows = n - 1;
    std::vector<Vec> D(static_cast<std::size_t>(rows), Vec(static_cast<std::size_t>(n)));
    double scale = 0.0;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < n; ++j) {
            D[i][j] = pts[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j)] -
                      pts[0][static_cast<std::size_t>(j)];
            scale = std::max(scale, std::fabs(D[i][j]));
        }
    }
    if (!(scale > 0.0)) return false;

    std::vector<int> pivot_col(static_cast<std::size_t>(rows), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    int row = 0;
    for (int col = 0; col < n && row < rows; ++col) {
        int best = -1;
        double best_abs = 1e-10 * scale;
        for (int i = row; i < rows; ++i) {
            if (std::fabs(D[i][col]) > best_abs) {
                best_abs = std::fabs(D[i][col]);
                best = i;
            }
        }
        if (best < 0) continue;
        std::swap(D[static_cast<std::size_t>(row)], D[static_cast<std::size_t>(best)]);
        pivot_col[static_cast<std::size_t>(row)] = col;
        used[static_cast<std::size_t>(col)] = true;
        for (int i = row + 1; i < rows; ++i) {
            double f = D[i][col] / D[row][col];
            for (int j = col; j < n; ++j) D[i][j] -= f * D[row][j];
        }
        ++row;
    }
    if (row < rows) return false;

    int free_col = -1;
    for (int j = 0; j < n; ++j) {
        if (!used[static_cast<std::size_t>(j)]) {
            free_col = j;
            break;
        }
    }
    u.assign(static_cast<std::size_t>(n), 0.0);
    u[static_cast<std::size_t>(free_col)] = 1.0;
    for (int i = rows - 1; i >= 0; --i) {
        int pc = pivot_col[static_cast<std::size_t>(i)];
        double s = 0.0;
        for (int j = pc + 1; j < n; ++j) s += D[i][j] * u[static_cast<std::size_t>(j)];
        u[static_cast<std::size_t>(pc)] = -s / D[i][pc];
    }
    double len = norm(u);
    if (!(len > 0.0)) return false;
    scale_inplace(u, 1.0 / len);
    t = dot(u, pts[0]);
    return true;
}

}  // namespace

FacetCheckResult facet_check(int n, int m, double sigma, double r,
                             std::size_t hulls, std::uint64_t seed,
                             const RunOptions& opts) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (m < n + 1) throw std::invalid_argument("need at least n+1 points");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
    if (hulls == 0) throw std::invalid_argument("need at least one hull");

    std::vector<std::uint8_t> event(hulls, 0);
    std::atomic<std::size_t> degenerate{0};
    parallel_for(hulls, opts.threads, [&](std::size_t h) {
        std::uint64_t seed_h = rng::rep_seed(seed, h);
        for (std::uint64_t attempt = 0;; ++attempt) {
            if (attempt > 100)
                throw std::runtime_error("facet check: persistent degenerate draws");
            std::uint64_t s = attempt == 0 ? seed_h : rng::rep_seed(seed_h, attempt);
            auto pts = processes::sample_beta_prime(n, sigma, m, s);
            Vec u;
            double t = 0.0;
            if (!facet_hyperplane(pts, n, u, t)) {
                degenerate.fetch_add(1);
                continue;
            }
            bool pos = false, neg = false, on = false;
            for (int j = n; j < m; ++j) {
                double side = dot(u, pts[static_cast<std::size_t>(j)]) - t;
                if (std::fabs(side) <= 1e-12 * (1.0 + std::fabs(t))) {
                    on = true;
                    break;
                }
                (side > 0.0 ? pos : neg) = true;
            }
            if (on) {
                degenerate.fetch_add(1);
                continue;
            }
            bool facet = !(pos && neg);
            event[h] = (facet && std::fabs(t) <= r) ? 1 : 0;
            break;
        }
    });

    FacetCheckResult out;
    out.hulls = hulls;
    out.degenerate_resampled = degenerate.load();
    double sum = 0.0;
    for (auto e : event) sum += e;
    out.frequency = sum / static_cast<double>(hulls);
    out.std_err =
        std::sqrt(std::max(0.0, out.frequency * (1.0 - out.frequency) /
                                    static_cast<double>(hulls)));
    out.analytic = analytics::facet_probability(n, m, sigma, r);
    return out;
}

}  // namespace hyptess::experiments
