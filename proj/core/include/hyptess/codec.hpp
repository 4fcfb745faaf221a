#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hyptess/cellgeom.hpp"
#include "hyptess/linalg.hpp"
#include "hyptess/processes.hpp"
#include "hyptess/stats.hpp"

namespace hyptess::codec {

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One sign bit per hyperplane of the bound tessellation: +1 iff the encoded
// point lies strictly on the far side of the plane from the origin.
struct CodeWord {
    std::vector<std::int8_t> bits;
    std::uint64_t source_seed = 0;
};

// bit_i = sign(<u_i, x> - tau_i), ties (within 1e-12) resolve to -1, the
// origin side. x must lie inside the sample's window.
CodeWord encode(const processes::TessellationSample& ts, const Vec& x);

// The decoded polyhedron {z : bit_i (<u_i,z> - tau_i) >= 0} clipped to the
// window box. May be empty for codes that no point realizes.
cellgeom::HalfspaceSystem cell_of(const processes::TessellationSample& ts,
                                  const CodeWord& code);

// Chebyshev center of the decoded cell; DecodeError when the cell is empty.
Vec decode_chebyshev(const processes::TessellationSample& ts, const CodeWord& code);

// Uniform point in the decoded cell by hit-and-run from the Chebyshev center.
Vec decode_uniform(const processes::TessellationSample& ts, const CodeWord& code,
                   int steps, std::uint64_t seed);

// Order-sensitive FNV-style hash of the bit string (for JSON-lines output).
std::uint64_t code_hash(const CodeWord& code);

enum class Decoder { Chebyshev, Uniform };
Decoder decoder_from_name(const std::string& name);
std::string decoder_name(Decoder d);

struct DistortionTrial {
    Vec x;
    Vec x_hat;
    double distortion = 0.0;
    std::uint64_t hash = 0;
};

struct DistortionResult {
    stats::EstimateWithCI mean;
    double median = 0.0;
    double q10 = 0.0;
    double q90 = 0.0;
    // Fraction of trials whose farthest cell vertex from x exceeds far_r
    // (exact polygon geometry; dimension two only, NaN otherwise).
    double far_vertex_fraction = 0.0;
    double far_r = 0.0;
    std::size_t trials = 0;
    std::size_t fixed_point_violations = 0;
    double excluded_fraction = 0.0;
    std::vector<DistortionTrial> per_trial; // filled when keep_trials is set
};

struct DistortionOptions {
    int walk_steps = 0;        // 0 = 50 * n
    double far_r = 0.0;        // 0 = n / gamma
    double probe_radius = 0.0; // 0 = n / gamma
    bool keep_trials = false;
};

// Probe points uniform in a ball, encode against a fresh tessellation per
// trial, decode, and summarize |x - x_hat|.
DistortionResult distortion_experiment(processes::Model model, int n, double gamma,
                                       Decoder decoder, std::size_t trials,
                                       std::uint64_t seed,
                                       const DistortionOptions& opts = {});

} // namespace hyptess::codec
