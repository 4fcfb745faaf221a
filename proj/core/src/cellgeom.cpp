#include "hyptess/cellgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hyptess/lp.hpp"
#include "hyptess/specfun.hpp"

namespace hyptess::cellgeom {

namespace {

constexpr double kTieTol = 1e-12;

double signed_excess(const processes::Hyperplane& h, const Vec& x) {
    return dot(h.normal, x) - h.offset;
}

void check_point_dim(const processes::TessellationSample& ts, const Vec& x,
                     const char* who) {
    if (static_cast<int>(x.size()) != ts.dim)
        throw std::invalid_argument(std::string(who) + ": point dimension mismatch");
}

void check_unit(const Vec& u, const char* who) {
    if (std::abs(norm(u) - 1.0) > 1e-8)
        throw std::invalid_argument(std::string(who) + ": direction must be unit length");
}

polygon2d::Polygon clip_cell_2d(const processes::TessellationSample& ts) {
    std::vector<std::array<double, 2>> normals;
    Vec offsets;
    normals.reserve(ts.hyperplanes.size());
    offsets.reserve(ts.hyperplanes.size());
    for (const processes::Hyperplane& h : ts.hyperplanes) {
        normals.push_back({h.normal[0], h.normal[1]});
        offsets.push_back(h.offset);
    }
    return polygon2d::intersect(ts.window_r, normals, offsets);
}

// Checks whether the zero cell provably fits strictly inside B(window_r)
// using only the sampled planes. For dim >= 3 the proof is the
// circumscribed-box radius from 2n axis-support LPs.
struct WithinResult {
    bool certified = false;
    std::optional<polygon2d::Polygon> polygon;
};

WithinResult cell_within_window(const processes::TessellationSample& ts) {
    WithinResult res;
    const double w = ts.window_r;
    const double strict = w * (1.0 - 1e-12);
    if (ts.hyperplanes.empty()) return res;
    if (ts.dim == 1) {
        bool pos = false, neg = false;
        for (const processes::Hyperplane& h : ts.hyperplanes) {
            (h.normal[0] > 0.0 ? pos : neg) = true;
        }
        res.certified = pos && neg; // offsets < window_r by construction
        return res;
    }
    if (ts.dim == 2) {
        polygon2d::Polygon poly = clip_cell_2d(ts);
        if (!poly.vertices.empty() && poly.r_max < strict) {
            res.certified = true;
            res.polygon = std::move(poly);
        }
        return res;
    }
    const HalfspaceSystem sys = zero_cell_system(ts);
    double r2 = 0.0;
    Vec dir(static_cast<std::size_t>(ts.dim), 0.0);
    for (int j = 0; j < ts.dim; ++j) {
        double extent = 0.0;
        for (double s : {1.0, -1.0}) {
            dir[static_cast<std::size_t>(j)] = s;
            lp::Result lr = lp::solve_max(sys.normals, sys.offsets, dir);
            if (lr.status != lp::Status::Optimal)
                throw std::runtime_error("certify: support LP did not converge");
            extent = std::max(extent, lr.objective);
        }
        dir[static_cast<std::size_t>(j)] = 0.0;
        r2 += extent * extent;
    }
    res.certified = std::sqrt(r2) < strict;
    return res;
}

} // namespace

ZeroCellView make_view(const processes::TessellationSample& ts,
                       double certified_radius, bool truncated) {
    ZeroCellView v;
    v.source = &ts;
    v.active_halfspaces.resize(ts.hyperplanes.size());
    for (std::size_t i = 0; i < v.active_halfspaces.size(); ++i)
        v.active_halfspaces[i] = i;
    v.certified_radius = certified_radius;
    v.truncated = truncated;
    return v;
}

HalfspaceSystem zero_cell_system(const processes::TessellationSample& ts) {
    HalfspaceSystem sys;
    const std::size_t m = ts.hyperplanes.size();
    const std::size_t n = static_cast<std::size_t>(ts.dim);
    sys.normals.reserve(m + 2 * n);
    sys.offsets.reserve(m + 2 * n);
    for (const processes::Hyperplane& h : ts.hyperplanes) {
        sys.normals.push_back(h.normal);
        sys.offsets.push_back(h.offset);
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

bool system_contains(const HalfspaceSystem& sys, const Vec& x, double tol) {
    for (std::size_t i = 0; i < sys.normals.size(); ++i)
        if (dot(sys.normals[i], x) - sys.offsets[i] > tol) return false;
    return true;
}

bool in_zero_cell(const processes::TessellationSample& ts, const Vec& x) {
    check_point_dim(ts, x, "in_zero_cell");
    for (const processes::Hyperplane& h : ts.hyperplanes)
        if (signed_excess(h, x) > kTieTol) return false;
    return true;
}

bool same_cell(const processes::TessellationSample& ts, const Vec& x, const Vec& y) {
    check_point_dim(ts, x, "same_cell");
    check_point_dim(ts, y, "same_cell");
    for (const processes::Hyperplane& h : ts.hyperplanes) {
        const double sx = signed_excess(h, x);
        const double sy = signed_excess(h, y);
        if ((sx > kTieTol && sy < -kTieTol) || (sx < -kTieTol && sy > kTieTol))
            return false;
    }
    return true;
}

InradiusResult inradius(const processes::TessellationSample& ts) {
    InradiusResult r;
    if (ts.hyperplanes.empty()) {
        r.unbounded = true;
        r.value = ts.window_r;
        return r;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const processes::Hyperplane& h : ts.hyperplanes)
        best = std::min(best, h.offset);
    r.value = best;
    return r;
}

RadialResult radial_function(const processes::TessellationSample& ts, const Vec& u) {
    check_point_dim(ts, u, "radial_function");
    check_unit(u, "radial_function");
    RadialResult r;
    double best = std::numeric_limits<double>::infinity();
    for (const processes::Hyperplane& h : ts.hyperplanes) {
        const double s = dot(h.normal, u);
        if (s > 0.0) best = std::min(best, h.offset / s);
    }
    if (!std::isfinite(best)) {
        r.unbounded = true;
        r.window_truncated = true;
        r.value = std::numeric_limits<double>::infinity();
        return r;
    }
    r.value = best;
    // Planes beyond the window bound the ray at >= window_r, so a value
    // strictly below window_r is the true radial distance.
    r.window_truncated = best >= ts.window_r * (1.0 - 1e-12);
    return r;
}

RadialResult radial_function(const ZeroCellView& view, const Vec& u) {
    return radial_function(*view.source, u);
}

CertifyOutcome certify(processes::TessellationSample ts, std::uint64_t extension_seed,
                       int max_doublings) {
    CertifyOutcome out;
    for (int d = 0;; ++d) {
        WithinResult within = cell_within_window(ts);
        if (within.certified) {
            out.ts = std::move(ts);
            out.certified_radius = out.ts.window_r;
            out.truncated = false;
            out.doublings = d;
            out.polygon = std::move(within.polygon);
            return out;
        }
        if (d >= max_doublings) {
            out.ts = std::move(ts);
            out.truncated = true;
            out.budget_exhausted = true;
            out.doublings = d;
            return out;
        }
        ts = processes::extend_window(ts, 2.0 * ts.window_r,
                                      rng::rep_seed(extension_seed, static_cast<std::uint64_t>(d)));
    }
}

ZeroCellView view_of(const CertifyOutcome& outcome) {
    return make_view(outcome.ts, outcome.certified_radius, outcome.truncated);
}

stats::EstimateWithCI volume_radial_mc(const ZeroCellView& view, int k_dirs,
                                       std::uint64_t seed) {
    if (view.truncated)
        throw std::invalid_argument("volume_radial_mc: view is window-truncated");
    const processes::TessellationSample& ts = *view.source;
    const int n = ts.dim;
    if (n == 1) {
        const RadialResult plus = radial_function(ts, Vec{1.0});
        const RadialResult minus = radial_function(ts, Vec{-1.0});
        stats::EstimateWithCI e;
        e.mean = plus.value + minus.value;
        e.std_err = 0.0;
        e.reps = 2;
        e.ci_lo = e.mean;
        e.ci_hi = e.mean;
        e.se_defined = true;
        return e;
    }
    if (k_dirs < 1) throw std::invalid_argument("volume_radial_mc: k_dirs >= 1");
    const double log_kn = specfun::log_kappa(n);
    rng::Stream stream(seed, 0, rng::Tag::Directions);
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(k_dirs));
    for (int i = 0; i < k_dirs; ++i) {
        const Vec u = stream.unit_vector(n);
        const RadialResult rr = radial_function(ts, u);
        if (rr.window_truncated)
            throw TruncationError("volume_radial_mc: radial ray left the certified window");
        vals.push_back(std::exp(log_kn + n * std::log(rr.value)));
    }
    return stats::summarize(vals);
}

polygon2d::Polygon exact_polygon_2d(const ZeroCellView& view) {
    const processes::TessellationSample& ts = *view.source;
    if (ts.dim != 2)
        throw std::invalid_argument("exact_polygon_2d: dimension two only");
    polygon2d::Polygon poly = clip_cell_2d(ts);
    const double edge = ts.window_r * (1.0 - 1e-9);
    for (const auto& v : poly.vertices) {
        if (std::abs(v[0]) >= edge || std::abs(v[1]) >= edge)
            throw TruncationError("exact_polygon_2d: cell reaches the window box");
    }
    return poly;
}

Vec support_vertex(const ZeroCellView& view, const Vec& direction) {
    const processes::TessellationSample& ts = *view.source;
    check_point_dim(ts, direction, "support_vertex");
    const HalfspaceSystem sys = zero_cell_system(ts);
    lp::Result lr = lp::solve_max(sys.normals, sys.offsets, direction);
    if (lr.status == lp::Status::PivotLimit)
        throw std::runtime_error("support_vertex: pivot limit reached");
    if (lr.status != lp::Status::Optimal)
        throw std::runtime_error("support_vertex: LP failed");
    const double slack_tol = 1e-9 * (1.0 + ts.window_r);
    for (std::size_t i = sys.n_cell_rows; i < sys.normals.size(); ++i) {
        if (sys.offsets[i] - dot(sys.normals[i], lr.x) < slack_tol)
            throw TruncationError("support_vertex: optimum rests on the window box");
    }
    return lr.x;
}

double r_max_estimate(const ZeroCellView& view, int k_dirs, std::uint64_t seed) {
    const processes::TessellationSample& ts = *view.source;
    if (ts.dim == 1) {
        const RadialResult plus = radial_function(ts, Vec{1.0});
        const RadialResult minus = radial_function(ts, Vec{-1.0});
        if (plus.window_truncated || minus.window_truncated)
            throw TruncationError("r_max_estimate: interval reaches the window");
        return std::max(plus.value, minus.value);
    }
    if (ts.dim == 2) return exact_polygon_2d(view).r_max;
    if (k_dirs < 1) throw std::invalid_argument("r_max_estimate: k_dirs >= 1");
    rng::Stream stream(seed, 0, rng::Tag::Directions);
    double best = 0.0;
    for (int i = 0; i < k_dirs; ++i) {
        const Vec v = support_vertex(view, stream.unit_vector(ts.dim));
        best = std::max(best, norm(v));
    }
    return best;
}

std::pair<Vec, double> chebyshev_center(const ZeroCellView& view) {
    const HalfspaceSystem sys = zero_cell_system(*view.source);
    lp::ChebyshevResult cr = lp::chebyshev_ball(sys.normals, sys.offsets);
    if (cr.status != lp::Status::Optimal)
        throw std::runtime_error("chebyshev_center: LP failed");
    return {cr.center, cr.radius};
}

Vec hit_and_run_system(const HalfspaceSystem& sys, Vec start, int steps,
                       rng::Stream& stream) {
    const std::size_t n = start.size();
    Vec x = std::move(start);
    int bad_chords = 0;
    for (int step = 0; step < steps;) {
        const Vec d = stream.unit_vector(static_cast<int>(n));
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < sys.normals.size(); ++i) {
            const double s = dot(sys.normals[i], d);
            const double v = sys.offsets[i] - dot(sys.normals[i], x);
            if (s > 1e-14) hi = std::min(hi, v / s);
            else if (s < -1e-14) lo = std::max(lo, v / s);
        }
        if (!(hi - lo > 1e-12)) {
            if (++bad_chords > 100)
                throw std::runtime_error("hit_and_run: degenerate chord (cell has no interior?)");
            continue;
        }
        bad_chords = 0;
        const double t = stream.uniform(lo, hi);
        axpy(x, t, d);
        ++step;
    }
    return x;
}

Vec hit_and_run_uniform(const ZeroCellView& view, int steps, std::uint64_t seed) {
    const HalfspaceSystem sys = zero_cell_system(*view.source);
    auto [center, radius] = chebyshev_center(view);
    if (!(radius > 0.0))
        throw std::runtime_error("hit_and_run_uniform: cell has empty interior");
    rng::Stream stream(seed, 0, rng::Tag::Walk);
    return hit_and_run_system(sys, std::move(center), steps, stream);
}

processes::TessellationSample intersect_with_subspace(
    const processes::TessellationSample& ts, const std::vector<Vec>& basis) {
    const int n = ts.dim;
    const int m = static_cast<int>(basis.size());
    if (m < 1 || m > n)
        throw std::invalid_argument("intersect_with_subspace: need 1 <= m <= n basis vectors");
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(basis[static_cast<std::size_t>(i)].size()) != n)
            throw std::invalid_argument("intersect_with_subspace: basis dimension mismatch");
        for (int j = 0; j <= i; ++j) {
            const double g = dot(basis[static_cast<std::size_t>(i)],
                                 basis[static_cast<std::size_t>(j)]);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > 1e-10)
                throw std::invalid_argument("intersect_with_subspace: basis not orthonormal");
        }
    }
    processes::TessellationSample out;
    out.dim = m;
    out.model = ts.model;
    out.window_r = ts.window_r;
    out.seed = ts.seed;
    if (ts.model == processes::Model::IsotropicPoisson && m < n) {
        // Sectional intensity of the isotropic process.
        const auto om = [](int k) {
            return std::log(static_cast<double>(k)) + specfun::log_kappa(k);
        };
        out.gamma = std::exp(std::log(ts.gamma) + om(m) + om(n + 1) - om(n) - om(m + 1));
    } else {
        out.gamma = ts.gamma;
    }
    for (const processes::Hyperplane& h : ts.hyperplanes) {
        Vec p(static_cast<std::size_t>(m), 0.0);
        for (int k = 0; k < m; ++k)
            p[static_cast<std::size_t>(k)] = dot(h.normal, basis[static_cast<std::size_t>(k)]);
        const double np = norm(p);
        if (np < 1e-12) continue;
        const double induced_offset = h.offset / np;
        if (induced_offset >= ts.window_r) continue;
        scale_inplace(p, 1.0 / np);
        out.hyperplanes.push_back({std::move(p), induced_offset});
    }
    return out;
}

} // namespace hyptess::cellgeom
