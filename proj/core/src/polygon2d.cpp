#include "hyptess/polygon2d.hpp"

#include <algorithm>
#include <cmath>

namespace hyptess::polygon2d {

std::vector<Point> square(double half_width) {
    const double w = half_width;
    return {{-w, -w}, {w, -w}, {w, w}, {-w, w}};
}

std::vector<Point> clip_halfplane(const std::vector<Point>& poly,
                                  const std::array<double, 2>& a, double b) {
    std::vector<Point> out;
    const std::size_t k = poly.size();
    if (k == 0) return out;
    out.reserve(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        const Point& cur = poly[i];
        const Point& nxt = poly[(i + 1) % k];
        const double dc = b - (a[0] * cur[0] + a[1] * cur[1]);
        const double dn = b - (a[0] * nxt[0] + a[1] * nxt[1]);
        if (dc >= 0.0) out.push_back(cur);
        if ((dc >= 0.0) != (dn >= 0.0)) {
            const double t = dc / (dc - dn);
            out.push_back({cur[0] + t * (nxt[0] - cur[0]),
                           cur[1] + t * (nxt[1] - cur[1])});
        }
    }
    return out;
}

double polygon_area(const std::vector<Point>& poly) {
    const std::size_t k = poly.size();
    if (k < 3) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % k];
        s += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * s;
}

double polygon_r_max(const std::vector<Point>& poly) {
    double r2 = 0.0;
    for (const Point& p : poly)
        r2 = std::max(r2, p[0] * p[0] + p[1] * p[1]);
    return std::sqrt(r2);
}

double farthest_vertex_distance(const std::vector<Point>& poly,
                                const Point& anchor) {
    double r2 = 0.0;
    for (const Point& p : poly) {
        const double dx = p[0] - anchor[0];
        const double dy = p[1] - anchor[1];
        r2 = std::max(r2, dx * dx + dy * dy);
    }
    return std::sqrt(r2);
}

std::vector<Point> dedupe(const std::vector<Point>& poly, double tol) {
    const std::size_t k = poly.size();
    if (k < 2) return poly;
    double scale = 0.0;
    for (const Point& p : poly)
        scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
    const double eps = tol * std::max(1.0, scale);
    std::vector<Point> out;
    out.reserve(k);
    for (const Point& p : poly) {
        if (!out.empty() && std::abs(p[0] - out.back()[0]) <= eps &&
            std::abs(p[1] - out.back()[1]) <= eps)
            continue;
        out.push_back(p);
    }
    while (out.size() > 1 && std::abs(out.front()[0] - out.back()[0]) <= eps &&
           std::abs(out.front()[1] - out.back()[1]) <= eps)
        out.pop_back();
    return out;
}

Polygon intersect(double half_width,
                  const std::vector<std::array<double, 2>>& normals,
                  const Vec& offsets) {
    std::vector<Point> poly = square(half_width);
    for (std::size_t i = 0; i < normals.size() && !poly.empty(); ++i)
        poly = clip_halfplane(poly, normals[i], offsets[i]);
    Polygon out;
    out.vertices = dedupe(poly);
    out.area = polygon_area(out.vertices);
    out.r_max = polygon_r_max(out.vertices);
    return out;
}

} // namespace hyptess::polygon2d
