#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyptess/analytics.hpp"
#include "hyptess/cellgeom.hpp"
#include "hyptess/codec.hpp"
#include "hyptess/experiments.hpp"
#include "hyptess/processes.hpp"
#include "hyptess/serialize.hpp"
#include "hyptess/specfun.hpp"
#include "hyptess/stats.hpp"

namespace ht = hyptess;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fd(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit(const std::string& line) { std::fputs((line + "\n").c_str(), stdout); }

// JSON config files: {"estimate": {"n": 5, "gamma": 2.0}}. Command-line flags
// always win over config values.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j = json::parse(input);
        std::vector<CLI::ConfigItem> items;
        flatten({}, j, items);
        return items;
    }

  private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }

    static void flatten(std::vector<std::string> parents, const json& j,
                        std::vector<CLI::ConfigItem>& items) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object()) {
                auto p = parents;
                p.push_back(it.key());
                flatten(p, *it, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = it.key();
            if (it->is_array()) {
                for (const auto& v : *it) item.inputs.push_back(scalar(v));
            } else {
                item.inputs.push_back(scalar(*it));
            }
            items.push_back(std::move(item));
        }
    }
};

struct OracleGate {
    bool all_pass = true;
    void check_z(double z) {
        if (std::isfinite(z) && std::fabs(z) > 3.0) all_pass = false;
    }
    void require(bool ok) {
        if (!ok) all_pass = false;
    }
    int exit_code() const { return all_pass ? 0 : 2; }
};

struct CommonArgs {
    int n = 2;
    double gamma = 0.0;  // resolved: explicit gamma, else rho * n^alpha, else 1
    double rho = 0.0;
    double alpha = 1.0;
    std::string model = "isotropic";
    std::size_t reps = 1000;
    std::uint64_t seed = 1;
    double window_r = 0.0;
    int threads = 1;
    int k_dirs = 64;
    int walk_steps = 0;
    std::string out = "csv";

    double resolved_gamma() const {
        if (gamma > 0.0) return gamma;
        if (rho > 0.0) return rho * std::pow(static_cast<double>(n), alpha);
        return 1.0;
    }
    ht::processes::Model resolved_model() const {
        return ht::processes::model_from_name(model);
    }
    ht::experiments::RunOptions run_options() const {
        ht::experiments::RunOptions opts;
        opts.threads = threads;
        opts.k_dirs = k_dirs;
        opts.window_r = window_r;
        opts.walk_steps = walk_steps;
        return opts;
    }
    bool json_out() const { return out == "json"; }
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_model = true) {
    cmd->fallthrough();
    cmd->add_option("--n", a.n, "ambient dimension");
    cmd->add_option("--gamma", a.gamma, "hyperplane intensity");
    cmd->add_option("--rho", a.rho, "scaling intensity: gamma = rho * n^alpha");
    cmd->add_option("--alpha", a.alpha, "scaling exponent for --rho");
    if (with_model)
        cmd->add_option("--model", a.model, "isotropic | manhattan | grid");
    cmd->add_option("--reps", a.reps, "replications");
    cmd->add_option("--seed", a.seed, "master seed");
    cmd->add_option("--window-r", a.window_r, "window radius (0 = automatic)");
    cmd->add_option("--threads", a.threads, "worker threads (same output for any count)");
    cmd->add_option("--k-dirs", a.k_dirs, "radial directions per cell");
    cmd->add_option("--walk-steps", a.walk_steps, "hit-and-run steps (0 = 50n)");
    cmd->add_option("--out", a.out, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
}

json estimate_json(const ht::stats::EstimateWithCI& e) {
    json j;
    j["mean"] = e.mean;
    if (e.se_defined) {
        j["std_err"] = e.std_err;
        j["ci_lo"] = e.ci_lo;
        j["ci_hi"] = e.ci_hi;
    } else {
        j["std_err"] = nullptr;
        j["ci_lo"] = nullptr;
        j["ci_hi"] = nullptr;
    }
    j["reps"] = e.reps;
    j["excluded_fraction"] = e.excluded_fraction;
    return j;
}

// ---------------------------------------------------------------- sample --

int run_sample(const CommonArgs& a, bool planes) {
    const double gamma = a.resolved_gamma();
    const auto model = a.resolved_model();
    const double window =
        a.window_r > 0.0 ? a.window_r : std::max(10.0, 8.0 * a.n / gamma);

    if (!planes && !a.json_out()) emit(ht::serialize::cell_summary_csv_header());
    for (std::size_t i = 0; i < a.reps; ++i) {
        const std::uint64_t seed_r = ht::rng::rep_seed(a.seed, i);
        ht::processes::TessellationSample ts;
        switch (model) {
            case ht::processes::Model::IsotropicPoisson:
                ts = ht::processes::sample_isotropic(a.n, gamma, window, seed_r);
                break;
            case ht::processes::Model::ManhattanPoisson:
                ts = ht::processes::sample_manhattan(a.n, gamma, window, seed_r);
                break;
            case ht::processes::Model::DeterministicGrid:
                ts = ht::processes::grid(a.n, gamma, window, true, seed_r);
                break;
        }
        if (planes) {
            emit(ht::serialize::tessellation_to_json(ts));
            continue;
        }
        auto out = ht::cellgeom::certify(std::move(ts), seed_r);
        ht::serialize::CellSummary row;
        row.seed = seed_r;
        row.dim = a.n;
        row.gamma = gamma;
        row.truncated = out.truncated;
        auto ir = ht::cellgeom::inradius(out.ts);
        row.inradius = ir.unbounded ? std::numeric_limits<double>::quiet_NaN() : ir.value;
        if (out.truncated) {
            row.volume = std::numeric_limits<double>::quiet_NaN();
            row.r_max = std::numeric_limits<double>::quiet_NaN();
        } else {
            auto view = ht::cellgeom::view_of(out);
            if (a.n == 2) {
                row.volume = out.polygon->area;
                row.r_max = out.polygon->r_max;
                row.n_vertices = static_cast<int>(out.polygon->vertices.size());
            } else {
                row.volume =
                    ht::cellgeom::volume_radial_mc(view, a.k_dirs, seed_r).mean;
                row.r_max = ht::cellgeom::r_max_estimate(view, a.k_dirs, seed_r);
            }
        }
        emit(a.json_out() ? ht::serialize::cell_summary_to_json(row)
                          : ht::serialize::cell_summary_csv_row(row));
    }
    return 0;
}

// -------------------------------------------------------------- estimate --

int run_estimate(const CommonArgs& a, const std::string& metric_name, double param,
                 double lambda) {
    const double gamma = a.resolved_gamma();
    const auto model = a.resolved_model();
    ht::experiments::MetricSpec spec;
    spec.metric = ht::experiments::metric_from_name(metric_name);
    spec.param = param;
    spec.lambda = lambda;

    auto est = ht::experiments::estimate(spec, model, a.n, gamma, a.reps, a.seed,
                                         a.run_options());
    auto oracle = ht::experiments::metric_oracle(spec, model, a.n, gamma);
    double z = std::numeric_limits<double>::quiet_NaN();
    if (oracle.available && est.se_defined && est.std_err > 0.0)
        z = (est.mean - oracle.value) / est.std_err;

    OracleGate gate;
    gate.check_z(z);

    if (a.json_out()) {
        json j;
        j["metric"] = metric_name;
        j["model"] = a.model;
        j["n"] = a.n;
        j["gamma"] = gamma;
        j["param"] = param;
        j["lambda"] = lambda;
        j["estimate"] = estimate_json(est);
        j["analytic"] = oracle.available ? json(oracle.value) : json(nullptr);
        j["z"] = std::isfinite(z) ? json(z) : json(nullptr);
        emit(j.dump());
    } else {
        emit("metric,model,n,gamma,param,lambda,reps,mean,std_err,ci_lo,ci_hi,"
             "excluded_fraction,analytic,z");
        std::string row = metric_name + "," + a.model + "," + std::to_string(a.n) +
                          "," + fd(gamma) + "," + fd(param) + "," + fd(lambda) + "," +
                          std::to_string(est.reps) + "," + fd(est.mean) + "," +
                          (est.se_defined ? fd(est.std_err) : "") + "," +
                          (est.se_defined ? fd(est.ci_lo) : "") + "," +
                          (est.se_defined ? fd(est.ci_hi) : "") + "," +
                          fd(est.excluded_fraction) + "," +
                          (oracle.available ? fd(oracle.value) : "") + "," +
                          (std::isfinite(z) ? fd(z) : "");
        emit(row);
    }
    return gate.exit_code();
}

// -------------------------------------------------------------- analytic --

struct AnalyticArgs {
    std::string name;
    int n = 2;
    int m = 1;
    int k = 1;
    double gamma = 1.0;
    double rho = 1.0;
    double alpha = 1.0;
    double lambda = 1.0;
    double sigma = 1.0;
    double delta = 1.0;
    double r = 1.0;
    double R = 1.0;
    double arg = 1.0;
    std::string kind = "point_in_z0";
    std::string side = "beyond";
    std::string out = "csv";
};

void emit_value(const AnalyticArgs& a, const std::string& name, const json& params,
                double value, double log_value) {
    if (a.out == "json") {
        json j;
        j["name"] = name;
        j["params"] = params;
        j["value"] = value;
        j["log_value"] = log_value;
        emit(j.dump());
    } else {
        emit("name,params,value,log_value");
        emit(name + ",\"" + params.dump() + "\"," + fd(value) + "," + fd(log_value));
    }
}

int run_analytic(const AnalyticArgs& a) {
    using namespace ht::analytics;
    const std::string& name = a.name;
    json p;
    if (name == "zero_cell_volume") {
        auto v = expected_zero_cell_volume(a.n, a.gamma);
        p = {{"n", a.n}, {"gamma", a.gamma}};
        emit_value(a, name, p, v.value, v.log_value);
    } else if (name == "typical_cell_volume") {
        auto v = expected_typical_cell_volume(a.n, a.gamma);
        p = {{"n", a.n}, {"gamma", a.gamma}};
        emit_value(a, name, p, v.value, v.log_value);
    } else if (name == "cell_intensity") {
        auto v = cell_intensity(a.n, a.gamma);
        p = {{"n", a.n}, {"gamma", a.gamma}};
        emit_value(a, name, p, v.value, v.log_value);
    } else if (name == "moment_lower" || name == "moment_upper") {
        auto b = zero_cell_moment_bounds(a.n, a.gamma, a.k);
        auto v = name == "moment_lower" ? b.lower : b.upper;
        p = {{"n", a.n}, {"gamma", a.gamma}, {"k", a.k}};
        emit_value(a, name, p, v.value, v.log_value);
    } else if (name == "variance_bracket") {
        auto v = zero_cell_variance_bracket(a.n, a.gamma);
        p = {{"n", a.n}, {"gamma", a.gamma}};
        emit_value(a, name, p, v.value, v.log_value);
    } else if (name == "separation") {
        auto kind = separation_kind_from_name(a.kind);
        double v = separation_probability(a.n, a.gamma, kind, a.arg);
        p = {{"n", a.n}, {"gamma", a.gamma}, {"kind", a.kind}, {"arg", a.arg}};
        emit_value(a, name, p, v, std::log(v));
    } else if (name == "gaussian_sep") {
        double v = gaussian_separation(a.n, a.gamma, a.sigma);
        p = {{"n", a.n}, {"gamma", a.gamma}, {"sigma", a.sigma}};
        emit_value(a, name, p, v, std::log(v));
    } else if (name == "gaussian_sep_limit") {
        double v = gaussian_separation_limit(a.rho, a.sigma);
        p = {{"rho", a.rho}, {"sigma", a.sigma}};
        emit_value(a, name, p, v, std::log(v));
    } else if (name == "rate") {
        ScalingConfig cfg;
        cfg.rho = a.rho;
        cfg.alpha = a.alpha;
        cfg.lambda_exp = a.lambda;
        cfg.R = a.R;
        cfg.sigma = a.sigma;
        cfg.delta = a.delta;
        double v = rate_function(rate_kind_from_name(a.kind), cfg);
        p = {{"kind", a.kind}, {"rho", a.rho},   {"alpha", a.alpha},
             {"lambda", a.lambda}, {"R", a.R}};
        emit_value(a, name, p, v, v);
    } else if (name == "rate_thresholds") {
        p = {{"lambda", a.lambda}, {"R", a.R}};
        if (a.out == "json") {
            json j;
            j["name"] = name;
            j["params"] = p;
            j["zero_cell"] = zero_cell_rate_threshold();
            j["typical_cell"] = typical_cell_rate_threshold();
            j["rho_star"] = poisson_near_rho_star(a.lambda);
            j["conditional_max_rho_upper"] = conditional_max_rho_upper(a.R, a.lambda);
            emit(j.dump());
        } else {
            emit("name,zero_cell,typical_cell,rho_star,conditional_max_rho_upper");
            emit(name + "," + fd(zero_cell_rate_threshold()) + "," +
                 fd(typical_cell_rate_threshold()) + "," +
                 fd(poisson_near_rho_star(a.lambda)) + "," +
                 fd(conditional_max_rho_upper(a.R, a.lambda)));
        }
    } else if (name == "rho_thresholds") {
        auto t = rho_thresholds(a.R);
        if (a.out == "json") {
            json j;
            j["name"] = name;
            j["params"] = {{"R", a.R}};
            j["x_lower"] = t.x_lower;
            j["x_upper"] = t.x_upper;
            j["rho_lower"] = t.rho_lower;
            j["rho_upper"] = t.rho_upper;
            emit(j.dump());
        } else {
            emit("name,x_lower,x_upper,rho_lower,rho_upper");
            emit(name + "," + fd(t.x_lower) + "," + fd(t.x_upper) + "," +
                 fd(t.rho_lower) + "," + fd(t.rho_upper));
        }
    } else if (name == "vertices") {
        auto side = a.side == "within" ? VertexSide::Within : VertexSide::Beyond;
        double v = expected_vertices(a.n, a.gamma, a.r, side);
        p = {{"n", a.n}, {"gamma", a.gamma}, {"r", a.r}, {"side", a.side}};
        emit_value(a, name, p, v, std::log(v));
    } else if (name == "facet_probability") {
        double v = facet_probability(a.n, a.m, a.sigma, a.r);
        p = {{"n", a.n}, {"m", a.m}, {"sigma", a.sigma}, {"r", a.r}};
        emit_value(a, name, p, v, std::log(v));
    } else if (name == "sigma_to_gamma") {
        double v = sigma_to_gamma(a.n, a.sigma);
        p = {{"n", a.n}, {"sigma", a.sigma}};
        emit_value(a, name, p, v, std::log(v));
    } else if (name == "section") {
        auto s = section_expectations(a.n, a.m, a.gamma, a.k);
        if (a.out == "json") {
            json j;
            j["name"] = name;
            j["params"] = {{"n", a.n}, {"m", a.m}, {"gamma", a.gamma}, {"k", a.k}};
            j["gamma_m"] = s.gamma_m;
            j["expected_volume"] = s.expected_volume.value;
            j["log_expected_volume"] = s.expected_volume.log_value;
            j["moment_lower"] = s.bounds.lower.value;
            j["moment_upper"] = s.bounds.upper.value;
            emit(j.dump());
        } else {
            emit("name,gamma_m,expected_volume,log_expected_volume,moment_lower,"
                 "moment_upper");
            emit(name + "," + fd(s.gamma_m) + "," + fd(s.expected_volume.value) + "," +
                 fd(s.expected_volume.log_value) + "," + fd(s.bounds.lower.value) +
                 "," + fd(s.bounds.upper.value));
        }
    } else if (name == "palm_expectations") {
        auto e = poisson_data_expectations(a.n, a.gamma, a.lambda, a.R);
        if (a.out == "json") {
            json j;
            j["name"] = name;
            j["params"] = {{"n", a.n}, {"gamma", a.gamma}, {"lambda", a.lambda},
                           {"R", a.R}};
            j["expected_total"] = e.expected_total;
            j["expected_outside"] = e.expected_outside;
            j["expected_inside"] = e.expected_inside;
            j["outside_fraction"] = e.outside_fraction;
            j["jensen_lower_p_one"] = e.jensen_lower_p_one;
            emit(j.dump());
        } else {
            emit("name,expected_total,expected_outside,expected_inside,"
                 "outside_fraction,jensen_lower_p_one");
            emit(name + "," + fd(e.expected_total) + "," + fd(e.expected_outside) +
                 "," + fd(e.expected_inside) + "," + fd(e.outside_fraction) + "," +
                 fd(e.jensen_lower_p_one));
        }
    } else {
        throw std::invalid_argument("unknown analytic name: " + name);
    }
    return 0;
}

// ----------------------------------------------------------------- sweep --

int run_sweep(const CommonArgs& a, const std::vector<int>& n_list,
              const std::string& metric_name, double param, double lambda) {
    ht::experiments::SweepSpec spec;
    spec.rho = a.rho > 0.0 ? a.rho : a.resolved_gamma();
    spec.alpha = a.alpha;
    spec.n_list = n_list;
    spec.metric.metric = ht::experiments::metric_from_name(metric_name);
    spec.metric.param = param;
    spec.metric.lambda = lambda;
    spec.model = a.resolved_model();
    spec.reps = a.reps;
    spec.master_seed = a.seed;

    auto res = ht::experiments::sweep(spec, a.run_options());

    OracleGate gate;
    for (const auto& row : res.rows) {
        gate.require(!row.failed);
        if (row.has_analytic) gate.check_z(row.z_score);
    }

    if (a.json_out()) {
        json rows = json::array();
        for (const auto& row : res.rows) {
            json j;
            j["n"] = row.n;
            j["gamma"] = row.gamma;
            j["estimate"] = estimate_json(row.est);
            j["analytic"] = row.has_analytic ? json(row.analytic) : json(nullptr);
            j["rate"] = row.has_rate ? json(row.rate) : json(nullptr);
            j["z"] = row.has_analytic && row.est.se_defined ? json(row.z_score)
                                                            : json(nullptr);
            j["failed"] = row.failed;
            j["note"] = row.note;
            rows.push_back(std::move(j));
        }
        json j;
        j["metric"] = metric_name;
        j["model"] = a.model;
        j["rho"] = spec.rho;
        j["alpha"] = spec.alpha;
        j["rows"] = std::move(rows);
        j["kendall_tau"] = res.kendall_tau;
        j["limit"] = res.has_limit ? json(res.limit) : json(nullptr);
        j["verdict"] = res.verdict;
        emit(j.dump());
    } else {
        emit("n,gamma,reps,mean,std_err,ci_lo,ci_hi,excluded_fraction,analytic,z,"
             "rate,failed");
        for (const auto& row : res.rows) {
            std::string line =
                std::to_string(row.n) + "," + fd(row.gamma) + "," +
                std::to_string(row.est.reps) + "," + fd(row.est.mean) + "," +
                (row.est.se_defined ? fd(row.est.std_err) : "") + "," +
                (row.est.se_defined ? fd(row.est.ci_lo) : "") + "," +
                (row.est.se_defined ? fd(row.est.ci_hi) : "") + "," +
                fd(row.est.excluded_fraction) + "," +
                (row.has_analytic ? fd(row.analytic) : "") + "," +
                (row.has_analytic && row.est.se_defined ? fd(row.z_score) : "") +
                "," + (row.has_rate ? fd(row.rate) : "") + "," +
                (row.failed ? "1" : "0");
            emit(line);
        }
        std::string tail = "# kendall_tau=" + fd(res.kendall_tau) +
                           " verdict=" + res.verdict;
        if (res.has_limit) tail += " limit=" + fd(res.limit);
        emit(tail);
    }
    return gate.exit_code();
}

// --------------------------------------------------------------- compare --

int run_compare(const CommonArgs& a) {
    auto rows = ht::experiments::compare_models(a.n, a.resolved_gamma(), a.reps,
                                                a.seed, a.run_options());
    OracleGate gate;
    auto z_of = [](const ht::stats::EstimateWithCI& est, double analytic) {
        if (!est.se_defined || !(est.std_err > 0.0))
            return std::numeric_limits<double>::quiet_NaN();
        return (est.mean - analytic) / est.std_err;
    };

    json jrows = json::array();
    if (!a.json_out())
        emit("model,mc,vol_mean,vol_se,vol_analytic,vol_z,typical_vol_analytic,"
             "sep_mean,sep_se,sep_analytic,sep_z,rms_uniform,rms_uniform_analytic,"
             "rms_uniform_is_bound,rms_r_max,rms_r_max_analytic,rms_r_max_is_bound,"
             "excluded_fraction");
    for (const auto& row : rows) {
        double vol_analytic = row.analytic.zero_cell_volume.value;
        double vol_z = row.mc ? z_of(row.vol_est, vol_analytic)
                              : std::numeric_limits<double>::quiet_NaN();
        double sep_z = row.mc ? z_of(row.sep_est, row.sep_analytic)
                              : std::numeric_limits<double>::quiet_NaN();
        if (row.mc) {
            gate.check_z(vol_z);
            gate.check_z(sep_z);
            if (!row.analytic.rms_uniform_is_bound) {
                double target = row.analytic.rms_uniform_norm;
                gate.check_z(z_of(row.uniform_sq_est, target * target));
            }
            if (!row.analytic.rms_r_max_is_bound) {
                double target = row.analytic.rms_r_max;
                gate.check_z(z_of(row.r_max_sq_est, target * target));
            }
        } else {
            gate.require(row.vol_est.mean == vol_analytic);
        }

        if (a.json_out()) {
            json j;
            j["model"] = row.analytic.model;
            j["mc"] = row.mc;
            j["vol"] = estimate_json(row.vol_est);
            j["vol_analytic"] = vol_analytic;
            j["typical_vol_analytic"] = row.analytic.typical_cell_volume.value;
            j["sep"] = estimate_json(row.sep_est);
            j["sep_analytic"] = row.sep_analytic;
            j["separation_form"] = row.analytic.separation_form;
            j["rms_uniform"] = row.rms_uniform;
            j["rms_uniform_analytic"] = row.analytic.rms_uniform_norm;
            j["rms_uniform_is_bound"] = row.analytic.rms_uniform_is_bound;
            j["rms_r_max"] = row.rms_r_max;
            j["rms_r_max_analytic"] = row.analytic.rms_r_max;
            j["rms_r_max_is_bound"] = row.analytic.rms_r_max_is_bound;
            j["excluded_fraction"] = row.excluded_fraction;
            jrows.push_back(std::move(j));
        } else {
            std::string line =
                row.analytic.model + "," + (row.mc ? "1" : "0") + "," +
                fd(row.vol_est.mean) + "," +
                (row.vol_est.se_defined ? fd(row.vol_est.std_err) : "") + "," +
                fd(vol_analytic) + "," + (std::isfinite(vol_z) ? fd(vol_z) : "") +
                "," + fd(row.analytic.typical_cell_volume.value) + "," +
                fd(row.sep_est.mean) + "," +
                (row.sep_est.se_defined ? fd(row.sep_est.std_err) : "") + "," +
                fd(row.sep_analytic) + "," +
                (std::isfinite(sep_z) ? fd(sep_z) : "") + "," +
                fd(row.rms_uniform) + "," + fd(row.analytic.rms_uniform_norm) + "," +
                (row.analytic.rms_uniform_is_bound ? "1" : "0") + "," +
                fd(row.rms_r_max) + "," + fd(row.analytic.rms_r_max) + "," +
                (row.analytic.rms_r_max_is_bound ? "1" : "0") + "," +
                fd(row.excluded_fraction);
            emit(line);
        }
    }
    if (a.json_out()) emit(json{{"rows", jrows}}.dump());
    return gate.exit_code();
}

// ----------------------------------------------------------------- codec --

int run_codec(const CommonArgs& a, const std::string& decoder_name) {
    ht::codec::DistortionOptions opts;
    opts.walk_steps = a.walk_steps;
    opts.keep_trials = true;
    auto res = ht::codec::distortion_experiment(
        a.resolved_model(), a.n, a.resolved_gamma(),
        ht::codec::decoder_from_name(decoder_name), a.reps, a.seed, opts);

    OracleGate gate;
    gate.require(res.fixed_point_violations == 0);
    gate.require(res.excluded_fraction < 1e-2);

    if (a.json_out()) {
        for (const auto& t : res.per_trial) {
            json j;
            j["x"] = t.x;
            j["code_hash"] = t.hash;
            j["x_hat"] = t.x_hat;
            j["distortion"] = t.distortion;
            emit(j.dump());
        }
        json j;
        j["summary"] = true;
        j["mean"] = estimate_json(res.mean);
        j["median"] = res.median;
        j["q10"] = res.q10;
        j["q90"] = res.q90;
        j["far_vertex_fraction"] = res.far_vertex_fraction;
        j["far_r"] = res.far_r;
        j["trials"] = res.trials;
        j["fixed_point_violations"] = res.fixed_point_violations;
        j["excluded_fraction"] = res.excluded_fraction;
        emit(j.dump());
    } else {
        emit("trial,x,x_hat,distortion,code_hash");
        for (std::size_t i = 0; i < res.per_trial.size(); ++i) {
            const auto& t = res.per_trial[i];
            std::string xs, hs;
            for (std::size_t k = 0; k < t.x.size(); ++k) {
                if (k) {
                    xs += ';';
                    hs += ';';
                }
                xs += fd(t.x[k]);
                hs += fd(t.x_hat[k]);
            }
            emit(std::to_string(i) + "," + xs + "," + hs + "," + fd(t.distortion) +
                 "," + std::to_string(t.hash));
        }
        emit("# median=" + fd(res.median) + " q10=" + fd(res.q10) +
             " q90=" + fd(res.q90) + " mean=" + fd(res.mean.mean) +
             " fixed_point_violations=" + std::to_string(res.fixed_point_violations) +
             " excluded_fraction=" + fd(res.excluded_fraction));
    }
    return gate.exit_code();
}

// ------------------------------------------------------------ facet-check --

int run_facet_check(const CommonArgs& a, int m, double sigma, double r,
                    std::size_t hulls) {
    auto res = ht::experiments::facet_check(a.n, m, sigma, r, hulls, a.seed,
                                            a.run_options());
    OracleGate gate;
    if (res.std_err > 0.0) {
        gate.check_z((res.frequency - res.analytic) / res.std_err);
    } else {
        gate.require(std::fabs(res.frequency - res.analytic) <= 1e-9);
    }
    if (a.json_out()) {
        json j;
        j["n"] = a.n;
        j["m"] = m;
        j["sigma"] = sigma;
        j["r"] = r;
        j["hulls"] = res.hulls;
        j["frequency"] = res.frequency;
        j["std_err"] = res.std_err;
        j["analytic"] = res.analytic;
        j["degenerate_resampled"] = res.degenerate_resampled;
        emit(j.dump());
    } else {
        emit("n,m,sigma,r,hulls,frequency,std_err,analytic,degenerate_resampled");
        emit(std::to_string(a.n) + "," + std::to_string(m) + "," + fd(sigma) + "," +
             fd(r) + "," + std::to_string(res.hulls) + "," + fd(res.frequency) +
             "," + fd(res.std_err) + "," + fd(res.analytic) + "," +
             std::to_string(res.degenerate_resampled));
    }
    return gate.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sampling, estimation, and closed-form checks for stationary "
                 "hyperplane tessellations"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file mirroring the long flags");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    CommonArgs sample_args;
    bool sample_planes = false;
    auto* sample_cmd = app.add_subcommand("sample", "sample cells, dump summaries");
    add_common(sample_cmd, sample_args);
    sample_cmd->add_flag("--planes", sample_planes,
                         "dump raw hyperplane samples as JSON lines");

    CommonArgs est_args;
    std::string est_metric = "zero_volume";
    double est_param = 1.0;
    double est_lambda = 1.0;
    auto* est_cmd = app.add_subcommand("estimate", "Monte Carlo metric estimate");
    add_common(est_cmd, est_args);
    est_cmd->add_option("--metric", est_metric,
                        "zero_volume | inradius_cdf | point_in_z0 | gaussian_sep | "
                        "sphere_sep | vertices_beyond | r_max | uniform_norm | "
                        "palm_count | palm_max_distance");
    est_cmd->add_option("--param", est_param, "metric parameter (a, |x|, sigma, ...)");
    est_cmd->add_option("--lambda", est_lambda, "data intensity for palm metrics");

    AnalyticArgs an_args;
    auto* an_cmd = app.add_subcommand("analytic", "closed-form values");
    an_cmd->fallthrough();
    an_cmd->add_option("--name", an_args.name, "which closed form")->required();
    an_cmd->add_option("--n", an_args.n, "ambient dimension");
    an_cmd->add_option("--m", an_args.m, "section dimension / points per hull");
    an_cmd->add_option("--k", an_args.k, "moment order");
    an_cmd->add_option("--gamma", an_args.gamma, "hyperplane intensity");
    an_cmd->add_option("--rho", an_args.rho, "scaling intensity");
    an_cmd->add_option("--alpha", an_args.alpha, "scaling exponent");
    an_cmd->add_option("--lambda", an_args.lambda, "data intensity exponent");
    an_cmd->add_option("--sigma", an_args.sigma, "scale parameter");
    an_cmd->add_option("--delta", an_args.delta, "sphere displacement");
    an_cmd->add_option("--r", an_args.r, "radius argument (inf allowed)");
    an_cmd->add_option("--R", an_args.R, "distortion radius");
    an_cmd->add_option("--arg", an_args.arg, "separation argument");
    an_cmd->add_option("--kind", an_args.kind, "separation / rate kind");
    an_cmd->add_option("--side", an_args.side, "beyond | within");
    an_cmd->add_option("--out", an_args.out, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    CommonArgs sweep_args;
    std::vector<int> sweep_ns{2, 5, 10};
    std::string sweep_metric = "zero_volume";
    double sweep_param = 1.0;
    double sweep_lambda = 1.0;
    auto* sweep_cmd = app.add_subcommand("sweep", "dimension sweep with trend verdict");
    add_common(sweep_cmd, sweep_args);
    sweep_cmd->add_option("--n-list", sweep_ns, "dimensions to sweep")
        ->delimiter(',');
    sweep_cmd->add_option("--metric", sweep_metric, "metric name");
    sweep_cmd->add_option("--param", sweep_param, "metric parameter");
    sweep_cmd->add_option("--lambda", sweep_lambda, "data intensity for palm metrics");

    CommonArgs cmp_args;
    auto* cmp_cmd = app.add_subcommand("compare", "isotropic / manhattan / grid table");
    add_common(cmp_cmd, cmp_args);

    CommonArgs codec_args;
    std::string codec_decoder = "chebyshev";
    auto* codec_cmd = app.add_subcommand("codec", "encode/decode distortion trials");
    add_common(codec_cmd, codec_args);
    codec_cmd->add_option("--decoder", codec_decoder, "chebyshev | uniform");

    CommonArgs facet_args;
    int facet_m = 4;
    double facet_sigma = 1.0;
    double facet_r = kInf;
    std::size_t facet_hulls = 10000;
    auto* facet_cmd = app.add_subcommand("facet-check", "hull facet probability check");
    add_common(facet_cmd, facet_args, false);
    facet_cmd->add_option("--m", facet_m, "points per hull");
    facet_cmd->add_option("--sigma", facet_sigma, "heavy-tail scale");
    facet_cmd->add_option("--r", facet_r, "offset cap (inf allowed)");
    facet_cmd->add_option("--hulls", facet_hulls, "number of hulls");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample_cmd->parsed()) return run_sample(sample_args, sample_planes);
        if (est_cmd->parsed())
            return run_estimate(est_args, est_metric, est_param, est_lambda);
        if (an_cmd->parsed()) return run_analytic(an_args);
        if (sweep_cmd->parsed())
            return run_sweep(sweep_args, sweep_ns, sweep_metric, sweep_param,
                             sweep_lambda);
        if (cmp_cmd->parsed()) return run_compare(cmp_args);
        if (codec_cmd->parsed()) return run_codec(codec_args, codec_decoder);
        if (facet_cmd->parsed())
            return run_facet_check(facet_args, facet_m, facet_sigma, facet_r,
                                   facet_hulls);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
