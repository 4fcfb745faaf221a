// Acceptance gate: one line per criterion, exit code = number of failures.
// Tolerances are pinned here on purpose; loosening them is not a fix.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hyptess/analytics.hpp"
#include "hyptess/cellgeom.hpp"
#include "hyptess/codec.hpp"
#include "hyptess/experiments.hpp"
#include "hyptess/processes.hpp"
#include "hyptess/rng.hpp"
#include "hyptess/specfun.hpp"
#include "hyptess/stats.hpp"

using namespace hyptess;

namespace {

int g_failures = 0;

int worker_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 4 : static_cast<int>(hc);
}

experiments::RunOptions fast_opts() {
    experiments::RunOptions opts;
    opts.threads = worker_threads();
    return opts;
}

void criterion(int index, const std::string& label, const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", index,
                label.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool within(double value, double target, double tol, std::string& detail) {
    if (std::fabs(value - target) <= tol) return true;
    std::ostringstream os;
    os << "got " << value << ", want " << target << " +- " << tol;
    detail = os.str();
    return false;
}

bool three_se(const stats::EstimateWithCI& est, double target, std::string& detail) {
    return within(est.mean, target, 3.0 * est.std_err, detail);
}

std::string run_cli(const std::string& args, int& status) {
    std::string cmd = std::string(HYPTESS_CLI_PATH) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    status = pclose(pipe);
    return out;
}

} // namespace

int main() {
    const double pi3_half = 15.503138340149910;
    const int threads = worker_threads();
    std::printf("acceptance run, %d worker threads\n", threads);

    criterion(1, "zero-cell mean area: 95% CI covers the closed form in under a minute",
              [&](std::string& detail) {
                  const auto t0 = std::chrono::steady_clock::now();
                  experiments::MetricSpec spec;
                  spec.metric = experiments::Metric::ZeroVolume;
                  auto est = experiments::estimate(spec, processes::Model::IsotropicPoisson,
                                                   2, 1.0, 20000, 42, fast_opts());
                  const double secs = std::chrono::duration<double>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count();
                  if (secs >= 60.0) {
                      detail = "took too long";
                      return false;
                  }
                  if (est.ci_lo <= pi3_half && pi3_half <= est.ci_hi) return true;
                  std::ostringstream os;
                  os << "CI [" << est.ci_lo << ", " << est.ci_hi << "] misses " << pi3_half;
                  detail = os.str();
                  return false;
              });

    criterion(2, "axis-probe membership frequency matches the exponential law",
              [&](std::string& detail) {
                  const double targets[] = {0.5290778082677353, 0.6872892787909722,
                                            0.7720623721752782};
                  const int dims[] = {2, 5, 10};
                  for (int i = 0; i < 3; ++i) {
                      experiments::MetricSpec spec;
                      spec.metric = experiments::Metric::PointInZ0;
                      spec.param = 1.0;
                      auto est = experiments::estimate(spec, processes::Model::IsotropicPoisson,
                                                       dims[i], 1.0, 100000,
                                                       1000 + static_cast<std::uint64_t>(i),
                                                       fast_opts());
                      if (!three_se(est, targets[i], detail)) {
                          detail += " (n=" + std::to_string(dims[i]) + ")";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(3, "inradius sample passes a KS test against the exponential CDF",
              [&](std::string& detail) {
                  for (int n : {2, 10}) {
                      for (double gamma : {1.0, 2.0}) {
                          const double W = 12.0 / gamma;
                          std::vector<double> values;
                          values.reserve(10000);
                          for (std::size_t i = 0; i < 10000; ++i) {
                              auto ts = processes::sample_isotropic(
                                  n, gamma, W, rng::rep_seed(5000 + n * 10, i));
                              auto ir = cellgeom::inradius(ts);
                              if (ir.unbounded) continue;
                              values.push_back(ir.value);
                          }
                          double p = stats::ks_test_pvalue(values, [gamma](double a) {
                              return -std::expm1(-2.0 * gamma * a);
                          });
                          if (p <= 0.01) {
                              std::ostringstream os;
                              os << "KS p=" << p << " at n=" << n << " gamma=" << gamma;
                              detail = os.str();
                              return false;
                          }
                      }
                  }
                  return true;
              });

    criterion(4, "expected vertex counts, total and beyond a radius",
              [&](std::string& detail) {
                  experiments::MetricSpec spec;
                  spec.metric = experiments::Metric::VerticesBeyond;
                  spec.param = 0.0;
                  auto total = experiments::estimate(spec, processes::Model::IsotropicPoisson,
                                                     2, 1.0, 20000, 77, fast_opts());
                  if (!three_se(total, 4.9348022005446793, detail)) {
                      detail += " (total)";
                      return false;
                  }
                  spec.param = M_PI;
                  auto beyond = experiments::estimate(spec, processes::Model::IsotropicPoisson,
                                                      2, 1.0, 20000, 78, fast_opts());
                  if (!three_se(beyond, 2.0035585605821213, detail)) {
                      detail += " (beyond)";
                      return false;
                  }
                  return true;
              });

    criterion(5, "hull facet frequencies: certain triangle case and quadrilateral case",
              [&](std::string& detail) {
                  const double inf = std::numeric_limits<double>::infinity();
                  auto tri = experiments::facet_check(2, 3, 1.0, inf, 10000, 31, fast_opts());
                  if (tri.frequency != 1.0) {
                      detail = "triangle frequency " + std::to_string(tri.frequency);
                      return false;
                  }
                  auto quad = experiments::facet_check(2, 4, 1.0, inf, 100000, 32, fast_opts());
                  stats::EstimateWithCI as_est;
                  as_est.mean = quad.frequency;
                  as_est.std_err = quad.std_err;
                  return three_se(as_est, 0.5947152654306489, detail);
              });

    criterion(6, "exact identities: intensity-volume product, gamma tail complement, moment order",
              [&](std::string& detail) {
                  for (int n = 1; n <= 200; ++n) {
                      auto lam = analytics::cell_intensity(n, 1.0);
                      auto vol = analytics::expected_typical_cell_volume(n, 1.0);
                      if (std::fabs(lam.log_value + vol.log_value) >= 1e-12) {
                          detail = "intensity*volume != 1 at n=" + std::to_string(n);
                          return false;
                      }
                      for (double r : {0.5 * n, 1.0 * n, 2.0 * n}) {
                          double s = specfun::reg_gamma_upper(n, r) +
                                     specfun::reg_gamma_lower(n, r);
                          if (std::fabs(s - 1.0) >= 1e-12) {
                              detail = "tail complement off at n=" + std::to_string(n);
                              return false;
                          }
                      }
                  }
                  for (int n = 1; n <= 50; ++n) {
                      const double logv = analytics::expected_zero_cell_volume(n, 1.0).log_value;
                      for (int k = 1; k <= 3; ++k) {
                          auto b = analytics::zero_cell_moment_bounds(n, 1.0, k);
                          if (b.lower.log_value > k * logv + 1e-9 ||
                              k * logv > b.upper.log_value + 1e-9) {
                              detail = "moment bracket violated at n=" + std::to_string(n) +
                                       " k=" + std::to_string(k);
                              return false;
                          }
                      }
                  }
                  return true;
              });

    criterion(7, "gaussian membership: quadrature matches MC and decreases to its limit",
              [&](std::string& detail) {
                  experiments::MetricSpec spec;
                  spec.metric = experiments::Metric::GaussianSep;
                  spec.param = 1.0;
                  auto est = experiments::estimate(spec, processes::Model::IsotropicPoisson,
                                                   10, 1.0, 100000, 99, fast_opts());
                  const double analytic = analytics::gaussian_separation(10, 1.0, 1.0);
                  if (!three_se(est, analytic, detail)) return false;
                  const double limit = 0.45028049832185049;
                  double prev = 1.0;
                  for (int n : {2, 5, 10, 20, 50}) {
                      double v = analytics::gaussian_separation(n, 1.0, 1.0);
                      if (v >= prev || v <= limit) {
                          detail = "sequence not decreasing toward the limit at n=" +
                                   std::to_string(n);
                          return false;
                      }
                      prev = v;
                  }
                  return true;
              });

    criterion(8, "growth-rate sign flips at the pinned thresholds, root residuals tiny",
              [&](std::string& detail) {
                  struct Case {
                      analytics::RateKind kind;
                      double threshold;
                  };
                  const Case cases[] = {
                      {analytics::RateKind::ZeroCellVolume, analytics::zero_cell_rate_threshold()},
                      {analytics::RateKind::TypicalCellVolume,
                       analytics::typical_cell_rate_threshold()},
                  };
                  for (const auto& c : cases) {
                      const double step = 1e-4;
                      const double lo = c.threshold - 50 * step;
                      int flips = 0;
                      double flip_at = 0.0;
                      analytics::ScalingConfig cfg;
                      cfg.rho = lo;
                      double prev = analytics::rate_function(c.kind, cfg);
                      for (int i = 1; i <= 100; ++i) {
                          cfg.rho = lo + i * step;
                          double cur = analytics::rate_function(c.kind, cfg);
                          if ((prev > 0) != (cur > 0)) {
                              ++flips;
                              flip_at = cfg.rho;
                          }
                          prev = cur;
                      }
                      if (flips != 1 || std::fabs(flip_at - c.threshold) > step) {
                          std::ostringstream os;
                          os << "flips=" << flips << " near " << c.threshold;
                          detail = os.str();
                          return false;
                      }
                  }
                  auto th = analytics::rho_thresholds(1.0);
                  for (double x : {th.x_lower, th.x_upper}) {
                      if (std::fabs(std::log(M_PI) + std::log(x) - x + 1.0) >= 1e-10) {
                          detail = "root residual too large";
                          return false;
                      }
                  }
                  if (!within(th.x_upper, 3.3552587884567880, 1e-9, detail)) return false;
                  if (!within(th.x_lower, 0.13387405163250101, 1e-9, detail)) return false;
                  return true;
              });

    criterion(9, "point data in the zero cell: mean count, single-point bound, tail split",
              [&](std::string& detail) {
                  auto res = experiments::palm_experiment(2, 1.0, 1.0, 1.0, 20000, 404,
                                                          fast_opts());
                  if (!three_se(res.mean_count, pi3_half, detail)) {
                      detail += " (mean count)";
                      return false;
                  }
                  const double jensen = 1.84957764089872e-7;
                  if (res.p_exactly_one.mean < jensen - 3.0 * res.p_exactly_one.std_err) {
                      detail = "single-point probability under the lower bound";
                      return false;
                  }
                  if (!three_se(res.outside_fraction, 0.8658992021318799, detail)) {
                      detail += " (outside fraction, R=1)";
                      return false;
                  }
                  auto res2 = experiments::palm_experiment(2, 1.0, 1.0, M_PI, 20000, 405,
                                                           fast_opts());
                  if (!three_se(res2.outside_fraction, 0.40600584970983811, detail)) {
                      detail += " (outside fraction, R=pi)";
                      return false;
                  }
                  return true;
              });

    criterion(10, "planar section of the spatial process: line intensity and cell area",
              [&](std::string& detail) {
                  auto res = experiments::section_experiment(3, 1.0, 10000, 511, fast_opts());
                  if (!three_se(res.line_intensity, M_PI / 4.0, detail)) {
                      detail += " (intensity)";
                      return false;
                  }
                  if (!three_se(res.section_volume, 8.0 * M_PI, detail)) {
                      detail += " (area)";
                      return false;
                  }
                  return true;
              });

    criterion(11, "model comparison: ordering, exact grid row, closed-form agreement",
              [&](std::string& detail) {
                  auto rows = experiments::compare_models(2, 1.0, 100000, 600, fast_opts());
                  const experiments::ModelComparisonRow* iso = nullptr;
                  const experiments::ModelComparisonRow* man = nullptr;
                  const experiments::ModelComparisonRow* grid = nullptr;
                  for (const auto& row : rows) {
                      if (row.model == processes::Model::IsotropicPoisson) iso = &row;
                      if (row.model == processes::Model::ManhattanPoisson) man = &row;
                      if (row.model == processes::Model::DeterministicGrid) grid = &row;
                  }
                  if (!iso || !man || !grid) {
                      detail = "missing a model row";
                      return false;
                  }
                  const double diff = man->vol_est.mean - iso->vol_est.mean;
                  const double se = std::hypot(man->vol_est.std_err, iso->vol_est.std_err);
                  if (diff <= 3.0 * se) {
                      std::ostringstream os;
                      os << "volume ordering not resolved: diff=" << diff << " se=" << se;
                      detail = os.str();
                      return false;
                  }
                  if (grid->vol_est.mean != grid->analytic.zero_cell_volume.value ||
                      grid->rms_uniform != grid->analytic.rms_uniform_norm ||
                      grid->rms_r_max != grid->analytic.rms_r_max) {
                      detail = "grid row deviates from its closed forms";
                      return false;
                  }
                  if (!three_se(man->vol_est, 16.0, detail)) {
                      detail += " (manhattan volume)";
                      return false;
                  }
                  if (!three_se(man->uniform_sq_est, 8.0, detail)) {
                      detail += " (manhattan mean squared norm)";
                      return false;
                  }
                  if (!three_se(man->r_max_sq_est, 28.0, detail)) {
                      detail += " (manhattan squared reach)";
                      return false;
                  }
                  return true;
              });

    criterion(12, "codec round trip is a fixed point and distortion halves with intensity",
              [&](std::string& detail) {
                  codec::DistortionOptions opts;
                  auto fixed = codec::distortion_experiment(
                      processes::Model::IsotropicPoisson, 2, 1.0, codec::Decoder::Chebyshev,
                      1000, 808, opts);
                  if (fixed.fixed_point_violations != 0) {
                      detail = std::to_string(fixed.fixed_point_violations) +
                               " fixed-point violations";
                      return false;
                  }
                  double medians[4];
                  const double gammas[4] = {1.0, 2.0, 4.0, 8.0};
                  for (int i = 0; i < 4; ++i) {
                      auto res = codec::distortion_experiment(
                          processes::Model::IsotropicPoisson, 2, gammas[i],
                          codec::Decoder::Chebyshev, 5000,
                          900 + static_cast<std::uint64_t>(i), opts);
                      if (res.fixed_point_violations != 0) {
                          detail = "violations at gamma=" + std::to_string(gammas[i]);
                          return false;
                      }
                      medians[i] = res.median;
                  }
                  for (int i = 1; i < 4; ++i) {
                      const double ratio = medians[i] / medians[i - 1];
                      if (ratio < 0.45 || ratio > 0.55) {
                          std::ostringstream os;
                          os << "median ratio " << ratio << " between gamma=" << gammas[i - 1]
                             << " and gamma=" << gammas[i];
                          detail = os.str();
                          return false;
                      }
                  }
                  return true;
              });

    criterion(13, "same seed, different thread counts, byte-identical CLI output",
              [&](std::string& detail) {
                  const std::string base =
                      "estimate --metric zero_volume --n 2 --gamma 1 --reps 20000 --seed 42"
                      " --out csv --threads ";
                  int s1 = 0, s4 = 0, s8 = 0;
                  const std::string out1 = run_cli(base + "1", s1);
                  const std::string out4 = run_cli(base + "4", s4);
                  const std::string out8 = run_cli(base + "8", s8);
                  if (s1 != 0 || s4 != 0 || s8 != 0) {
                      detail = "CLI exit status nonzero";
                      return false;
                  }
                  if (out1.empty() || out1 != out4 || out1 != out8) {
                      detail = "outputs differ across thread counts";
                      return false;
                  }
                  return true;
              });

    std::printf("%d of 13 criteria passed\n", 13 - g_failures);
    return g_failures;
}
