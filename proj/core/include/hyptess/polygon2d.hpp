#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hyptess/linalg.hpp"

namespace hyptess::polygon2d {

using Point = std::array<double, 2>;

struct Polygon {
    std::vector<Point> vertices; // counter-clockwise, deduplicated
    double area = 0.0;
    double r_max = 0.0;          // farthest vertex from the origin
};

// Axis-aligned square [-half_width, half_width]^2, counter-clockwise.
std::vector<Point> square(double half_width);

// Clip a convex polygon by the halfplane {x : a.x <= b}. Empty input or a
// fully excluded polygon yields an empty vertex list.
std::vector<Point> clip_halfplane(const std::vector<Point>& poly,
                                  const std::array<double, 2>& a, double b);

// Intersect the square of the given half-width with all halfplanes
// {a_i . x <= b_i} and summarize. Normals need not be unit length.
Polygon intersect(double half_width,
                  const std::vector<std::array<double, 2>>& normals,
                  const Vec& offsets);

double polygon_area(const std::vector<Point>& poly);
double polygon_r_max(const std::vector<Point>& poly);

// Farthest vertex from an arbitrary anchor point.
double farthest_vertex_distance(const std::vector<Point>& poly,
                                const Point& anchor);

// Merge consecutive vertices closer than tol (relative to the polygon
// scale). Used before counting vertices.
std::vector<Point> dedupe(const std::vector<Point>& poly, double tol = 1e-10);

} // namespace hyptess::polygon2d
