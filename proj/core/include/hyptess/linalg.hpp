#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace hyptess {

// Dense real vector. Dimensions here are small (n <= a few hundred), so plain
// contiguous doubles beat any heavier linear-algebra dependency.
using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline double norm_l1(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += std::fabs(v);
    return s;
}

inline double norm_linf(const Vec& a) {
    double s = 0.0;
    for (double v : a) s = std::max(s, std::fabs(v));
    return s;
}

inline void scale_inplace(Vec& a, double c) {
    for (double& v : a) v *= c;
}

// a += c*b
inline void axpy(Vec& a, double c, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

}  // namespace hyptess
