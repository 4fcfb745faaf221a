#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hyptess/linalg.hpp"
#include "hyptess/polygon2d.hpp"
#include "hyptess/processes.hpp"
#include "hyptess/rng.hpp"
#include "hyptess/stats.hpp"

namespace hyptess::cellgeom {

// Raised when a result would depend on planes outside the sampled window.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The cell of the origin, viewed through a sampled window. certified_radius
// is a radius R with cell ⊆ B(R) proven from the sample alone; truncated
// views carry no such guarantee.
struct ZeroCellView {
    const processes::TessellationSample* source = nullptr;
    std::vector<std::size_t> active_halfspaces;
    double certified_radius = 0.0;
    bool truncated = true;
};

ZeroCellView make_view(const processes::TessellationSample& ts,
                       double certified_radius, bool truncated);

// Halfspace description a_i . x <= b_i of a cell clipped to the window box
// |x_j| <= window_r. Rows past n_cell_rows are the box rows. All rows have
// unit-norm normals.
struct HalfspaceSystem {
    std::vector<Vec> normals;
    Vec offsets;
    std::size_t n_cell_rows = 0;
};

HalfspaceSystem zero_cell_system(const processes::TessellationSample& ts);

bool system_contains(const HalfspaceSystem& sys, const Vec& x, double tol = 1e-12);

// Strict membership up to a 1e-12 tie tolerance (points on a plane count as
// inside; the event has probability zero under every sampler here).
bool in_zero_cell(const processes::TessellationSample& ts, const Vec& x);
bool same_cell(const processes::TessellationSample& ts, const Vec& x, const Vec& y);

struct InradiusResult {
    double value = 0.0;
    bool unbounded = false; // no plane limits the inradius inside the window
};
InradiusResult inradius(const processes::TessellationSample& ts);

struct RadialResult {
    double value = 0.0;
    bool unbounded = false;         // no plane hit in this direction
    bool window_truncated = false;  // value exceeds the certified radius
};
// Distance from the origin to the cell boundary along unit direction u,
// using the sampled planes only. The comparator for the truncation flag is
// the sample's window radius (or the view's certified radius).
RadialResult radial_function(const processes::TessellationSample& ts, const Vec& u);
RadialResult radial_function(const ZeroCellView& view, const Vec& u);

// Window certification: grow the window (doubling, fresh independent layers)
// until the zero cell provably fits strictly inside it. dim 1 closes via the
// nearest plane on each side, dim 2 via the exact clipped polygon, dim >= 3
// via 2n axis-support linear programs and the circumscribed-box radius.
struct CertifyOutcome {
    processes::TessellationSample ts;  // possibly extended
    double certified_radius = 0.0;
    bool truncated = true;
    bool budget_exhausted = false;
    int doublings = 0;
    // Present when dim == 2 and certification succeeded: the cell itself.
    std::optional<polygon2d::Polygon> polygon;
};
CertifyOutcome certify(processes::TessellationSample ts, std::uint64_t extension_seed,
                       int max_doublings = 6);

ZeroCellView view_of(const CertifyOutcome& outcome);

// Monte Carlo volume from k radial samples: kappa_n * mean(rho(U)^n) over
// uniform directions. Exact (interval length) in dimension one for any k.
stats::EstimateWithCI volume_radial_mc(const ZeroCellView& view, int k_dirs,
                                       std::uint64_t seed);

// Exact zero cell in dimension two as a clipped convex polygon.
polygon2d::Polygon exact_polygon_2d(const ZeroCellView& view);

// argmax of <direction, x> over the windowed cell. Throws TruncationError
// when the optimum rests on the window box.
Vec support_vertex(const ZeroCellView& view, const Vec& direction);

// Largest distance from the origin to the cell: exact polygon vertex scan in
// dimension two, max over k support vertices otherwise (a lower bound that
// is exact once the support directions cover the vertex set).
double r_max_estimate(const ZeroCellView& view, int k_dirs, std::uint64_t seed);

// Center and radius of the largest inscribed ball of the windowed cell.
std::pair<Vec, double> chebyshev_center(const ZeroCellView& view);

// Uniform point in the cell by hit-and-run from the Chebyshev center.
Vec hit_and_run_uniform(const ZeroCellView& view, int steps, std::uint64_t seed);

// Hit-and-run over an arbitrary bounded halfspace system (used by decoders).
Vec hit_and_run_system(const HalfspaceSystem& sys, Vec start, int steps,
                       rng::Stream& stream);

// Restriction of the process to span(basis): each plane {u.x = t} meets the
// subspace in {p.y = t/|p|} with p_k = <u, basis_k>, planes orthogonal to the
// subspace (|p| < 1e-12) are dropped, and induced offsets at or beyond the
// window are dropped with the window radius preserved. basis must be
// orthonormal (checked to 1e-10). For an isotropic parent the induced gamma
// is the exact sectional intensity; other models keep the parent's gamma.
processes::TessellationSample intersect_with_subspace(
    const processes::TessellationSample& ts, const std::vector<Vec>& basis);

} // namespace hyptess::cellgeom
