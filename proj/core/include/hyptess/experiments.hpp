#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyptess/analytics.hpp"
#include "hyptess/processes.hpp"
#include "hyptess/stats.hpp"

namespace hyptess::experiments {

enum class Metric {
    ZeroVolume,      // V(Z0): exact polygon area (n=2), interval (n=1), radial MC
    InradiusCdf,     // 1{distance to nearest plane <= a}
    PointInZ0,       // 1{ |x| e_1 in Z0 }
    GaussianSep,     // 1{ Y in Z0 }, Y Gaussian with scale sigma
    SphereSep,       // 1{ delta*U in Z0 }, U uniform direction
    VerticesBeyond,  // # cell vertices farther than r (dimension two)
    RMax,            // farthest point of Z0 from the origin
    UniformNorm,     // |Y|^2 for Y uniform in Z0 (rms = sqrt of the mean)
    PalmCount,       // N(Z0) for independent Poisson(lambda) data
    PalmMaxDistance, // 1{max |x_i| >= R | N(Z0) > 0}
};
Metric metric_from_name(const std::string& name);
std::string metric_name(Metric m);

struct MetricSpec {
    Metric metric = Metric::ZeroVolume;
    double param = 1.0;  // a / |x| / sigma / delta / r / R, by metric
    double lambda = 1.0; // data intensity for the palm metrics
};

struct RunOptions {
    int threads = 1;        // results are identical for any thread count
    int k_dirs = 64;        // radial directions per cell (volume MC, n >= 3)
    double window_r = 0.0;  // 0 = automatic policy
    int max_doublings = 6;
    int walk_steps = 0;     // 0 = 50n (uniform_norm)
};

// Per-replication raw values (the estimate's inputs). excluded counts
// replications dropped for window-budget exhaustion; for palm_max_distance,
// conditioning misses (N(Z0) = 0) shrink the returned vector but are counted
// separately and are not exclusions.
struct ReplicateResult {
    std::vector<double> values;
    std::size_t excluded = 0;
    std::size_t conditioning_misses = 0;
};
ReplicateResult replicate_values(const MetricSpec& spec, processes::Model model,
                                 int n, double gamma, std::size_t reps,
                                 std::uint64_t seed, const RunOptions& opts = {});

// Replication mean with CI. Throws when the excluded fraction reaches 1e-2.
stats::EstimateWithCI estimate(const MetricSpec& spec, processes::Model model,
                               int n, double gamma, std::size_t reps,
                               std::uint64_t seed, const RunOptions& opts = {});

// The closed-form oracle matching a metric at (model, n, gamma), when one
// exists (value the estimate's mean converges to).
struct OracleValue {
    double value = 0.0;
    bool available = false;
    bool bias_noted = false; // MC estimator enters a nonlinear map
};
OracleValue metric_oracle(const MetricSpec& spec, processes::Model model, int n,
                          double gamma);

struct PalmResult {
    stats::EstimateWithCI mean_count;      // E N(Z0)
    stats::EstimateWithCI p_exactly_one;   // P^0(N(Z0)=1) = P(no ordinary point)
    stats::EstimateWithCI conditional_max; // P(max |x_i| >= R | N(Z0) > 0)
    std::size_t conditioning_events = 0;
    bool conditional_defined = false;
    stats::EstimateWithCI outside_fraction; // E N(Z0 outside B(R)) / E N(Z0)
    analytics::PoissonDataExpectations oracle;
    double excluded_fraction = 0.0;
};
PalmResult palm_experiment(int n, double gamma, double lambda, double R,
                           std::size_t reps, std::uint64_t seed,
                           const RunOptions& opts = {});

// n=3 isotropic process cut by the coordinate 2-plane: induced line process
// intensity and exact section-cell areas against the sectional closed forms.
struct SectionResult {
    stats::EstimateWithCI line_intensity; // induced lines / (2 * window)
    stats::EstimateWithCI section_volume; // area of the induced zero cell
    double gamma_m = 0.0;
    analytics::SectionExpectations oracle;
    double excluded_fraction = 0.0;
};
SectionResult section_experiment(int n, double gamma, std::size_t reps,
                                 std::uint64_t seed, const RunOptions& opts = {});

struct SweepSpec {
    double rho = 1.0;
    double alpha = 1.0;
    std::vector<int> n_list;
    MetricSpec metric;
    processes::Model model = processes::Model::IsotropicPoisson;
    std::size_t reps = 1000;
    std::uint64_t master_seed = 1;
};

struct SweepRow {
    int n = 0;
    double gamma = 0.0;
    stats::EstimateWithCI est;
    double analytic = 0.0;
    bool has_analytic = false;
    double rate = 0.0;
    bool has_rate = false;
    double z_score = 0.0;
    bool failed = false;
    std::string note;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double kendall_tau = 0.0;
    double limit = 0.0;
    bool has_limit = false;
    std::string verdict; // approaches-limit | mixed | monotone-... | no-limit
};
SweepResult sweep(const SweepSpec& spec, const RunOptions& opts = {});

struct ModelComparisonRow {
    processes::Model model;
    analytics::ComparisonRow analytic;
    bool mc = false; // grid rows are closed-form, Poisson rows Monte Carlo
    stats::EstimateWithCI vol_est;
    stats::EstimateWithCI sep_est; // P(x not in Z0) at the probe point
    double sep_analytic = 0.0;
    stats::EstimateWithCI uniform_sq_est; // E |Y|^2
    double rms_uniform = 0.0;
    double rms_uniform_se = 0.0;
    stats::EstimateWithCI r_max_sq_est; // E R_M^2
    double rms_r_max = 0.0;
    double rms_r_max_se = 0.0;
    double excluded_fraction = 0.0;
};
std::vector<ModelComparisonRow> compare_models(int n, double gamma, std::size_t reps,
                                               std::uint64_t seed,
                                               const RunOptions& opts = {});

struct FacetCheckResult {
    double frequency = 0.0;
    double std_err = 0.0;
    double analytic = 0.0;
    std::size_t hulls = 0;
    std::size_t degenerate_resampled = 0;
};
FacetCheckResult facet_check(int n, int m, double sigma, double r,
                             std::size_t hulls, std::uint64_t seed,
                             const RunOptions& opts = {});

} // namespace hyptess::experiments
