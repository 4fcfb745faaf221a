#include <cmath>
#include <vector>

#include "doctest.h"
#include "hyptess/polygon2d.hpp"

using namespace hyptess;

TEST_CASE("square construction") {
    auto sq = polygon2d::square(2.0);
    REQUIRE(sq.size() == 4);
    CHECK(polygon2d::polygon_area(sq) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(polygon2d::polygon_r_max(sq) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("halfplane clipping") {
    auto sq = polygon2d::square(1.0);
    // keep x <= 0: rectangle [-1,0] x [-1,1]
    auto half = polygon2d::clip_halfplane(sq, {1.0, 0.0}, 0.0);
    CHECK(polygon2d::polygon_area(half) == doctest::Approx(2.0).epsilon(1e-12));

    // diagonal cut x + y <= 0 removes half the square
    auto diag = polygon2d::clip_halfplane(sq, {1.0, 1.0}, 0.0);
    CHECK(polygon2d::polygon_area(diag) == doctest::Approx(2.0).epsilon(1e-12));

    // cut far away leaves it unchanged
    auto same = polygon2d::clip_halfplane(sq, {1.0, 0.0}, 5.0);
    CHECK(polygon2d::polygon_area(same) == doctest::Approx(4.0).epsilon(1e-12));

    // cut excluding everything empties the polygon
    auto gone = polygon2d::clip_halfplane(sq, {1.0, 0.0}, -5.0);
    CHECK(gone.empty());
    CHECK(polygon2d::polygon_area(gone) == doctest::Approx(0.0));
}

TEST_CASE("triangle from three halfplanes") {
    // x >= 0, y >= 0, x + y <= 1
    std::vector<std::array<double, 2>> normals = {{-1.0, 0.0}, {0.0, -1.0}, {1.0, 1.0}};
    Vec offsets = {0.0, 0.0, 1.0};
    auto tri = polygon2d::intersect(10.0, normals, offsets);
    REQUIRE(tri.vertices.size() == 3);
    CHECK(tri.area == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tri.r_max == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("shoelace orientation is counterclockwise") {
    auto sq = polygon2d::square(1.0);
    double twice_area = 0.0;
    for (std::size_t i = 0; i < sq.size(); ++i) {
        auto& p = sq[i];
        auto& q = sq[(i + 1) % sq.size()];
        twice_area += p[0] * q[1] - q[0] * p[1];
    }
    CHECK(twice_area > 0.0);
    CHECK(twice_area == doctest::Approx(2.0 * polygon2d::polygon_area(sq)).epsilon(1e-12));
}

TEST_CASE("farthest vertex from an anchor") {
    auto sq = polygon2d::square(1.0);
    double d = polygon2d::farthest_vertex_distance(sq, {1.0, 1.0});
    CHECK(d == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("dedupe removes repeated vertices") {
    std::vector<polygon2d::Point> p = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0},
                                       {1.0, 1.0}, {0.0, 1.0}, {0.0, 1e-14}};
    auto q = polygon2d::dedupe(p);
    CHECK(q.size() == 4);
}
