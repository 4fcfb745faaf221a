#pragma once

#include <cstdint>

#include "hyptess/linalg.hpp"

namespace hyptess::rng {

// Stream purposes. Every random object pulls from its own stream keyed by
// (master seed, replication index, tag), so results do not depend on the
// order replications run in or how they are spread over threads.
enum class Tag : std::uint64_t {
    Hyperplanes = 1,
    WindowExtension = 2,
    Points = 3,
    Directions = 4,
    Walk = 5,
    Displacement = 6,
    BetaPrime = 7,
    GridPhase = 8,
    Probe = 9,
};

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t rep, Tag tag);

// Per-replication master seed, for APIs that take a plain seed.
std::uint64_t rep_seed(std::uint64_t master_seed, std::uint64_t rep);

// Counter-based generator: output i is a strong 64-bit mix of (key, i).
// Deterministic, O(1) state, cheap to split by key.
class Stream {
  public:
    explicit Stream(std::uint64_t key) : key_(key) {}
    Stream(std::uint64_t seed, std::uint64_t rep, Tag tag) : key_(derive_key(seed, rep, tag)) {}

    std::uint64_t next_u64();

    // Uniform on [0,1) with 53 random bits.
    double uniform01();
    double uniform(double a, double b);
    // Standard normal (Box-Muller, second value cached).
    double normal();
    double exponential(double rate);
    // Poisson count; product method for small means, PTRS rejection otherwise.
    std::uint64_t poisson(double mean);

    Vec gaussian_vector(int n, double sigma = 1.0);
    // Uniform direction on the unit sphere S^{n-1}.
    Vec unit_vector(int n);
    // Uniform point in the centered ball of given radius.
    Vec point_in_ball(int n, double radius);

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace hyptess::rng
