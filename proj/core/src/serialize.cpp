#include "hyptess/serialize.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace hyptess::serialize {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string tessellation_to_json(const processes::TessellationSample& ts, int indent) {
    nlohmann::json j;
    j["dim"] = ts.dim;
    j["model"] = processes::model_name(ts.model);
    j["gamma"] = ts.gamma;
    j["window_r"] = ts.window_r;
    j["seed"] = ts.seed;
    auto planes = nlohmann::json::array();
    for (const auto& h : ts.hyperplanes) {
        planes.push_back({{"normal", h.normal}, {"offset", h.offset}});
    }
    j["hyperplanes"] = std::move(planes);
    return j.dump(indent);
}

processes::TessellationSample tessellation_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    processes::TessellationSample ts;
    ts.dim = j.at("dim").get<int>();
    ts.model = processes::model_from_name(j.at("model").get<std::string>());
    ts.gamma = j.at("gamma").get<double>();
    ts.window_r = j.at("window_r").get<double>();
    ts.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& p : j.at("hyperplanes")) {
        processes::Hyperplane h;
        h.normal = p.at("normal").get<Vec>();
        h.offset = p.at("offset").get<double>();
        if (h.normal.size() != static_cast<std::size_t>(ts.dim))
            throw std::invalid_argument("hyperplane normal has the wrong dimension");
        ts.hyperplanes.push_back(std::move(h));
    }
    return ts;
}

std::string cell_summary_to_json(const CellSummary& row, int indent) {
    nlohmann::json j;
    j["seed"] = row.seed;
    j["dim"] = row.dim;
    j["gamma"] = row.gamma;
    j["volume"] = row.volume;
    j["inradius"] = row.inradius;
    j["r_max"] = row.r_max;
    j["n_vertices"] = row.n_vertices;
    j["truncated"] = row.truncated;
    return j.dump(indent);
}

std::string cell_summary_csv_header() {
    return "seed,dim,gamma,volume,inradius,r_max,n_vertices,truncated";
}

std::string cell_summary_csv_row(const CellSummary& row) {
    std::string out = std::to_string(row.seed);
    out += ',';
    out += std::to_string(row.dim);
    out += ',';
    out += fmt_double(row.gamma);
    out += ',';
    out += fmt_double(row.volume);
    out += ',';
    out += fmt_double(row.inradius);
    out += ',';
    out += fmt_double(row.r_max);
    out += ',';
    out += std::to_string(row.n_vertices);
    out += ',';
    out += row.truncated ? "1" : "0";
    return out;
}

}  // namespace hyptess::serialize
