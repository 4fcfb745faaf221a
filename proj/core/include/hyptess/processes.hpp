#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyptess/linalg.hpp"
#include "hyptess/rng.hpp"

namespace hyptess::processes {

// A hyperplane {z : <normal, z> = offset} with unit normal and offset >= 0,
// so the origin always sits on the nonpositive side.
struct Hyperplane {
    Vec normal;
    double offset = 0.0;
};

enum class Model { IsotropicPoisson, ManhattanPoisson, DeterministicGrid };

std::string model_name(Model m);
Model model_from_name(const std::string& name);

// A realized hyperplane process restricted to the ball window B(window_r):
// only planes meeting the window (offset < window_r) are stored.
struct TessellationSample {
    int dim = 0;
    Model model = Model::IsotropicPoisson;
    double gamma = 0.0;
    double window_r = 0.0;
    std::vector<Hyperplane> hyperplanes;
    std::uint64_t seed = 0;
};

struct PointSample {
    int dim = 0;
    double intensity = 0.0;
    double window_r = 0.0;
    std::vector<Vec> points;
    std::uint64_t seed = 0;
};

// Isotropic Poisson hyperplane process: Poisson(2*gamma*window_r) planes with
// uniform sphere normals and offsets uniform on (0, window_r).
TessellationSample sample_isotropic(int n, double gamma, double window_r, std::uint64_t seed);

// Axis-aligned Poisson model: per axis, plane positions form a Poisson
// process of intensity gamma/n on (-window_r, window_r).
TessellationSample sample_manhattan(int n, double gamma, double window_r, std::uint64_t seed);

// Deterministic axis-aligned grid of cell width 2n/gamma. centered=true puts
// the origin at a cell center (planes at odd multiples of n/gamma); with
// centered=false each axis gets a seeded uniform phase instead.
TessellationSample grid(int n, double gamma, double window_r, bool centered = true,
                        std::uint64_t seed = 0);

// Adds the independent annulus layer (window_r, new_r] so the union is
// distributed exactly as a fresh sample at new_r. Poisson models only; the
// grid is deterministic and is simply regenerated at the larger window.
TessellationSample extend_window(const TessellationSample& ts, double new_r, std::uint64_t seed);

// Poisson(lambda * kappa_n * window_r^n) uniform points in B(window_r).
PointSample sample_poisson_points(int n, double lambda, double window_r, std::uint64_t seed);

// i.i.d. draws from the heavy-tailed density proportional to
// (1+|x|^2/sigma^2)^{-(n+1)/2}, realized as sigma * Z/|g| with Z standard
// n-normal and g an independent standard normal scalar.
std::vector<Vec> sample_beta_prime(int n, double sigma, int m, std::uint64_t seed);

struct Displacement {
    enum class Kind { GaussianPerDim, SphereFixed };
    Kind kind = Kind::GaussianPerDim;
    double param = 1.0;  // sigma for Gaussian, delta (exact radius) for sphere
};

Vec sample_displacement(const Displacement& d, int n, std::uint64_t seed);

// Same laws with a caller-held stream (replication loops derive one stream
// per object and draw many objects from it).
TessellationSample sample_isotropic_stream(int n, double gamma, double window_r,
                                           rng::Stream& stream);
TessellationSample sample_manhattan_stream(int n, double gamma, double window_r,
                                           rng::Stream& stream);

}  // namespace hyptess::processes
