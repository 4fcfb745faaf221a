#pragma once

#include <string>

#include "hyptess/processes.hpp"

namespace hyptess::serialize {

// JSON round trip for realized samples. indent < 0 emits compact one-line
// JSON, otherwise pretty-printed with that indent.
std::string tessellation_to_json(const processes::TessellationSample& ts,
                                 int indent = -1);
processes::TessellationSample tessellation_from_json(const std::string& text);

// One summary row per cell for CSV/JSON dumps of sampled geometry.
struct CellSummary {
    std::uint64_t seed = 0;
    int dim = 0;
    double gamma = 0.0;
    double volume = 0.0;
    double inradius = 0.0;
    double r_max = 0.0;
    int n_vertices = 0;  // dimension two only; 0 otherwise
    bool truncated = false;
};

std::string cell_summary_to_json(const CellSummary& row, int indent = -1);
std::string cell_summary_csv_header();
std::string cell_summary_csv_row(const CellSummary& row);

}  // namespace hyptess::serialize
