#include <string>

#include "doctest.h"
#include "hyptess/processes.hpp"
#include "hyptess/serialize.hpp"

using namespace hyptess;

TEST_CASE("tessellation json round trip is exact") {
    auto ts = processes::sample_isotropic(3, 1.25, 4.5, 987654321);
    auto text = serialize::tessellation_to_json(ts);
    auto back = serialize::tessellation_from_json(text);

    CHECK(back.dim == ts.dim);
    CHECK(back.model == ts.model);
    CHECK(back.gamma == ts.gamma);
    CHECK(back.window_r == ts.window_r);
    CHECK(back.seed == ts.seed);
    REQUIRE(back.hyperplanes.size() == ts.hyperplanes.size());
    for (std::size_t i = 0; i < ts.hyperplanes.size(); ++i) {
        CHECK(back.hyperplanes[i].offset == ts.hyperplanes[i].offset);
        REQUIRE(back.hyperplanes[i].normal.size() == ts.hyperplanes[i].normal.size());
        for (std::size_t j = 0; j < ts.hyperplanes[i].normal.size(); ++j)
            CHECK(back.hyperplanes[i].normal[j] == ts.hyperplanes[i].normal[j]);
    }

    auto man = processes::sample_manhattan(2, 2.0, 3.0, 7);
    auto man_back = serialize::tessellation_from_json(serialize::tessellation_to_json(man, 2));
    CHECK(man_back.model == processes::Model::ManhattanPoisson);
    CHECK(man_back.hyperplanes.size() == man.hyperplanes.size());
}

TEST_CASE("malformed tessellation json is rejected") {
    CHECK_THROWS(serialize::tessellation_from_json("{}"));
    CHECK_THROWS(serialize::tessellation_from_json("not json"));
    // dimension mismatch between dim and a normal
    std::string bad = R"({"dim":3,"model":"isotropic","gamma":1.0,"window_r":2.0,)"
                      R"("seed":1,"hyperplanes":[{"normal":[1.0,0.0],"offset":0.5}]})";
    CHECK_THROWS(serialize::tessellation_from_json(bad));
}

TEST_CASE("cell summary formats") {
    serialize::CellSummary row;
    row.seed = 42;
    row.dim = 2;
    row.gamma = 1.5;
    row.volume = 3.25;
    row.inradius = 0.5;
    row.r_max = 2.0;
    row.n_vertices = 6;
    row.truncated = false;

    CHECK(serialize::cell_summary_csv_header() ==
          "seed,dim,gamma,volume,inradius,r_max,n_vertices,truncated");
    auto csv = serialize::cell_summary_csv_row(row);
    CHECK(csv == "42,2,1.5,3.25,0.5,2,6,0");

    auto json = serialize::cell_summary_to_json(row);
    CHECK(json.find("\"seed\":42") != std::string::npos);
    CHECK(json.find("\"n_vertices\":6") != std::string::npos);
    CHECK(json.find("\"truncated\":false") != std::string::npos);
}
