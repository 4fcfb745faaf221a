#include "hyptess/processes.hpp"

#include <cmath>
#include <stdexcept>

#include "hyptess/specfun.hpp"

namespace hyptess::processes {

namespace {

void check_common(int n, double gamma, double window_r) {
    if (n < 1) throw std::invalid_argument("tessellation: n >= 1 required");
    if (!(gamma > 0.0)) throw std::invalid_argument("tessellation: gamma > 0 required");
    if (!(window_r > 0.0)) throw std::invalid_argument("tessellation: window_r > 0 required");
}

Vec axis_vector(int n, int axis, double sign) {
    Vec v(static_cast<std::size_t>(n), 0.0);
    v[static_cast<std::size_t>(axis)] = sign;
    return v;
}

// Isotropic planes with offsets in (lo, hi): Poisson(2*gamma*(hi-lo)) of them.
void append_isotropic_layer(TessellationSample& ts, double lo, double hi, rng::Stream& stream) {
    std::uint64_t count = stream.poisson(2.0 * ts.gamma * (hi - lo));
    for (std::uint64_t i = 0; i < count; ++i) {
        Hyperplane h;
        h.normal = stream.unit_vector(ts.dim);
        h.offset = stream.uniform(lo, hi);
        ts.hyperplanes.push_back(std::move(h));
    }
}

// Manhattan planes with |position| in (lo, hi): per axis a Poisson process of
// intensity gamma/n on two intervals of length (hi-lo).
void append_manhattan_layer(TessellationSample& ts, double lo, double hi, rng::Stream& stream) {
    const double per_axis_mean = 2.0 * (hi - lo) * ts.gamma / ts.dim;
    for (int axis = 0; axis < ts.dim; ++axis) {
        std::uint64_t count = stream.poisson(per_axis_mean);
        for (std::uint64_t i = 0; i < count; ++i) {
            double sign = stream.uniform01() < 0.5 ? -1.0 : 1.0;
            Hyperplane h;
            h.normal = axis_vector(ts.dim, axis, sign);
            h.offset = stream.uniform(lo, hi);
            ts.hyperplanes.push_back(std::move(h));
        }
    }
}

// Rebuild a grid sample at a larger window. The lattice on each axis is
// recovered from any stored plane (coordinate c implies planes at
// c + 2k*half_width); axes with no plane inside the old window fall back to
// the centered layout.
TessellationSample regrow_grid(const TessellationSample& ts, double new_r) {
    const int n = ts.dim;
    const double h = static_cast<double>(n) / ts.gamma;
    std::vector<double> phase(static_cast<std::size_t>(n), 0.0);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const Hyperplane& hp : ts.hyperplanes) {
        int axis = -1;
        double sgn = 0.0;
        for (int j = 0; j < n; ++j) {
            if (hp.normal[static_cast<std::size_t>(j)] != 0.0) {
                axis = j;
                sgn = hp.normal[static_cast<std::size_t>(j)];
                break;
            }
        }
        if (axis < 0 || seen[static_cast<std::size_t>(axis)]) continue;
        const double c = sgn * hp.offset;
        phase[static_cast<std::size_t>(axis)] = std::remainder(c + h, 2.0 * h);
        seen[static_cast<std::size_t>(axis)] = true;
    }
    TessellationSample out = ts;
    out.window_r = new_r;
    out.hyperplanes.clear();
    for (int axis = 0; axis < n; ++axis) {
        const double ph = phase[static_cast<std::size_t>(axis)];
        for (long k = 0;; ++k) {
            const double right = ph + (2.0 * k + 1.0) * h;
            const double left = ph - (2.0 * k + 1.0) * h;
            bool any = false;
            if (std::fabs(right) < new_r && right != 0.0) {
                Hyperplane hp;
                hp.normal = axis_vector(n, axis, right > 0 ? 1.0 : -1.0);
                hp.offset = std::fabs(right);
                out.hyperplanes.push_back(std::move(hp));
                any = true;
            }
            if (std::fabs(left) < new_r && left != 0.0) {
                Hyperplane hp;
                hp.normal = axis_vector(n, axis, left > 0 ? 1.0 : -1.0);
                hp.offset = std::fabs(left);
                out.hyperplanes.push_back(std::move(hp));
                any = true;
            }
            if (!any) break;
        }
    }
    return out;
}

}  // namespace

std::string model_name(Model m) {
    switch (m) {
        case Model::IsotropicPoisson: return "isotropic";
        case Model::ManhattanPoisson: return "manhattan";
        case Model::DeterministicGrid: return "grid";
    }
    throw std::logic_error("model_name: unknown model");
}

Model model_from_name(const std::string& name) {
    if (name == "isotropic") return Model::IsotropicPoisson;
    if (name == "manhattan") return Model::ManhattanPoisson;
    if (name == "grid") return Model::DeterministicGrid;
    throw std::invalid_argument("unknown model '" + name + "' (isotropic|manhattan|grid)");
}

TessellationSample sample_isotropic_stream(int n, double gamma, double window_r,
                                           rng::Stream& stream) {
    check_common(n, gamma, window_r);
    TessellationSample ts;
    ts.dim = n;
    ts.model = Model::IsotropicPoisson;
    ts.gamma = gamma;
    ts.window_r = window_r;
    append_isotropic_layer(ts, 0.0, window_r, stream);
    return ts;
}

TessellationSample sample_isotropic(int n, double gamma, double window_r, std::uint64_t seed) {
    rng::Stream stream(seed, 0, rng::Tag::Hyperplanes);
    TessellationSample ts = sample_isotropic_stream(n, gamma, window_r, stream);
    ts.seed = seed;
    return ts;
}

TessellationSample sample_manhattan_stream(int n, double gamma, double window_r,
                                           rng::Stream& stream) {
    check_common(n, gamma, window_r);
    TessellationSample ts;
    ts.dim = n;
    ts.model = Model::ManhattanPoisson;
    ts.gamma = gamma;
    ts.window_r = window_r;
    append_manhattan_layer(ts, 0.0, window_r, stream);
    return ts;
}

TessellationSample sample_manhattan(int n, double gamma, double window_r, std::uint64_t seed) {
    rng::Stream stream(seed, 0, rng::Tag::Hyperplanes);
    TessellationSample ts = sample_manhattan_stream(n, gamma, window_r, stream);
    ts.seed = seed;
    return ts;
}

TessellationSample grid(int n, double gamma, double window_r, bool centered, std::uint64_t seed) {
    check_common(n, gamma, window_r);
    TessellationSample ts;
    ts.dim = n;
    ts.model = Model::DeterministicGrid;
    ts.gamma = gamma;
    ts.window_r = window_r;
    ts.seed = seed;
    const double half_width = static_cast<double>(n) / gamma;  // cell width 2n/gamma
    rng::Stream phase_stream(seed, 0, rng::Tag::GridPhase);
    for (int axis = 0; axis < n; ++axis) {
        double phase = centered ? 0.0 : phase_stream.uniform(-half_width, half_width);
        // Plane coordinates phase + (2k+1)*n/gamma for all integers k; keep
        // those strictly inside the window.
        for (long k = 0;; ++k) {
            double right = phase + (2.0 * k + 1.0) * half_width;
            double left = phase - (2.0 * k + 1.0) * half_width;
            bool any = false;
            if (std::fabs(right) < window_r && right != 0.0) {
                Hyperplane h;
                h.normal = axis_vector(n, axis, right > 0 ? 1.0 : -1.0);
                h.offset = std::fabs(right);
                ts.hyperplanes.push_back(std::move(h));
                any = true;
            }
            if (std::fabs(left) < window_r && left != 0.0) {
                Hyperplane h;
                h.normal = axis_vector(n, axis, left > 0 ? 1.0 : -1.0);
                h.offset = std::fabs(left);
                ts.hyperplanes.push_back(std::move(h));
                any = true;
            }
            if (!any) break;
        }
    }
    return ts;
}

TessellationSample extend_window(const TessellationSample& ts, double new_r, std::uint64_t seed) {
    if (!(new_r >= ts.window_r)) {
        throw std::invalid_argument("extend_window: new_r must not shrink the window");
    }
    if (new_r == ts.window_r) return ts;
    if (ts.model == Model::DeterministicGrid) {
        return regrow_grid(ts, new_r);
    }
    TessellationSample out = ts;
    out.window_r = new_r;
    rng::Stream stream(seed, 0, rng::Tag::WindowExtension);
    if (ts.model == Model::IsotropicPoisson) {
        append_isotropic_layer(out, ts.window_r, new_r, stream);
    } else {
        append_manhattan_layer(out, ts.window_r, new_r, stream);
    }
    return out;
}

PointSample sample_poisson_points(int n, double lambda, double window_r, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_poisson_points: n >= 1 required");
    if (lambda < 0.0) throw std::invalid_argument("sample_poisson_points: lambda >= 0 required");
    if (!(window_r > 0.0)) throw std::invalid_argument("sample_poisson_points: window_r > 0");
    double mean = lambda * std::exp(specfun::log_kappa(n) + n * std::log(window_r));
    if (!(mean < 1e8)) {
        throw std::invalid_argument("sample_poisson_points: expected count " +
                                    std::to_string(mean) + " exceeds the 1e8 guard");
    }
    PointSample ps;
    ps.dim = n;
    ps.intensity = lambda;
    ps.window_r = window_r;
    ps.seed = seed;
    rng::Stream stream(seed, 0, rng::Tag::Points);
    std::uint64_t count = stream.poisson(mean);
    ps.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        ps.points.push_back(stream.point_in_ball(n, window_r));
    }
    return ps;
}

std::vector<Vec> sample_beta_prime(int n, double sigma, int m, std::uint64_t seed) {
    if (n < 1 || m < 1) throw std::invalid_argument("sample_beta_prime: n, m >= 1 required");
    if (!(sigma > 0.0)) throw std::invalid_argument("sample_beta_prime: sigma > 0 required");
    rng::Stream stream(seed, 0, rng::Tag::BetaPrime);
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        double g;
        do {
            g = stream.normal();
        } while (std::fabs(g) < 1e-300);
        Vec z = stream.gaussian_vector(n);
        scale_inplace(z, sigma / std::fabs(g));
        out.push_back(std::move(z));
    }
    return out;
}

Vec sample_displacement(const Displacement& d, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_displacement: n >= 1 required");
    if (!(d.param > 0.0)) throw std::invalid_argument("sample_displacement: parameter > 0");
    rng::Stream stream(seed, 0, rng::Tag::Displacement);
    if (d.kind == Displacement::Kind::GaussianPerDim) {
        return stream.gaussian_vector(n, d.param);
    }
    Vec v = stream.unit_vector(n);
    scale_inplace(v, d.param);
    return v;
}

}  // namespace hyptess::processes
