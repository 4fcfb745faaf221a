#include "hyptess/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hyptess::rng {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer; full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t rep, Tag tag) {
    std::uint64_t k = mix64(seed + kGolden);
    k = mix64(k ^ (rep + kGolden));
    k = mix64(k ^ (static_cast<std::uint64_t>(tag) * kGolden));
    return k;
}

std::uint64_t rep_seed(std::uint64_t master_seed, std::uint64_t rep) {
    return mix64(mix64(master_seed + kGolden) ^ (rep * kGolden + 1));
}

std::uint64_t Stream::next_u64() {
    ctr_ += 1;
    return mix64(key_ + ctr_ * kGolden);
}

double Stream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::uniform(double a, double b) { return a + (b - a) * uniform01(); }

double Stream::normal() {
    if (have_cached_normal_) {
        have_cached_normal_ = false;
        return cached_normal_;
    }
    // Box-Muller on (0,1] uniforms; 1-u avoids log(0).
    double u1 = 1.0 - uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_normal_ = r * std::sin(2.0 * M_PI * u2);
    have_cached_normal_ = true;
    return r * std::cos(2.0 * M_PI * u2);
}

double Stream::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate > 0 required");
    return -std::log(1.0 - uniform01()) / rate;
}

std::uint64_t Stream::poisson(double mean) {
    if (mean < 0.0 || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson: mean must be finite and nonnegative");
    }
    if (mean == 0.0) return 0;
    if (mean < 30.0) {
        // Product of uniforms against exp(-mean).
        const double limit = std::exp(-mean);
        double prod = 1.0;
        std::uint64_t k = 0;
        for (;;) {
            prod *= uniform01();
            if (prod <= limit) return k;
            ++k;
        }
    }
    // PTRS transformed rejection (Hormann 1993); exact for mean >= 10.
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        double u = uniform01() - 0.5;
        double v = uniform01();
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        double rhs = kf * log_mean - mean - std::lgamma(kf + 1.0);
        if (lhs <= rhs) return static_cast<std::uint64_t>(kf);
    }
}

Vec Stream::gaussian_vector(int n, double sigma) {
    Vec v(static_cast<std::size_t>(n));
    for (double& x : v) x = sigma * normal();
    return v;
}

Vec Stream::unit_vector(int n) {
    if (n == 1) return Vec{uniform01() < 0.5 ? -1.0 : 1.0};
    for (;;) {
        Vec v = gaussian_vector(n);
        double r = norm(v);
        if (r > 1e-12) {
            scale_inplace(v, 1.0 / r);
            return v;
        }
    }
}

Vec Stream::point_in_ball(int n, double radius) {
    Vec v = unit_vector(n);
    double r = radius * std::pow(uniform01(), 1.0 / n);
    scale_inplace(v, r);
    return v;
}

}  // namespace hyptess::rng
