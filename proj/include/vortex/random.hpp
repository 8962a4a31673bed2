#pragma once

// Seedable portable RNG and domain samplers.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard; doubles are built from the top 53 bits so results do not depend
// on the standard library's distribution implementations.

#include "vortex/geometry.hpp"

#include <cstdint>
#include <random>

namespace vortex {

class Rng {
public:
    static constexpr const char* algorithm = "mt19937_64";

    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    /// Uniform in {0, .., n-1} (n > 0).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
    /// Log-uniform in [a, b], 0 < a < b.
    double log_uniform(double a, double b);

private:
    std::mt19937_64 eng_;
};

/// Independent stream seed for (seed, stream) via splitmix64.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform point in the domain (rejection from the bounding box).
Point sample_point(const Domain& domain, Rng& rng);

/// Point at distance dist from the boundary along the inward normal of a
/// uniformly drawn boundary parameter. Requires dist < collar width.
Point sample_at_distance(const Domain& domain, Rng& rng, double dist);

/// Uniform point of the domain in the disc of given radius around center.
/// Throws SamplingError after too many rejections.
Point sample_near(const Domain& domain, Rng& rng, Point center, double radius);

/// N uniform points with pairwise distance > min_gap and boundary distance > min_bdry.
Configuration sample_configuration(const Domain& domain, Rng& rng, std::size_t n, double min_gap = 0.0,
                                   double min_bdry = 0.0);

}  // namespace vortex
