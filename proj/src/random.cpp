#include "vortex/random.hpp"

#include "vortex/errors.hpp"

#include <cmath>

namespace vortex {

namespace {
constexpr int kMaxRejections = 100000;
}

double Rng::log_uniform(double a, double b)
{
    return a * std::exp(uniform() * std::log(b / a));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Point sample_point(const Domain& domain, Rng& rng)
{
    const auto [lo, hi] = domain.bounding_box();
    for (int k = 0; k < kMaxRejections; ++k) {
        const Point z{rng.uniform(lo.real(), hi.real()), rng.uniform(lo.imag(), hi.imag())};
        if (contains(domain, z)) {
            return z;
        }
    }
    throw SamplingError("could not place a point inside the domain");
}

Point sample_at_distance(const Domain& domain, Rng& rng, double dist)
{
    if (!(dist > 0.0) || !(dist < domain.collar_width())) {
        throw SamplingError("boundary distance must lie inside the collar");
    }
    const BoundaryPoint b = domain.boundary_point(rng.uniform());
    return b.point + dist * b.inward_normal;
}

Point sample_near(const Domain& domain, Rng& rng, Point center, double radius)
{
    for (int k = 0; k < kMaxRejections; ++k) {
        const double r = radius * std::sqrt(rng.uniform());
        const Point z = center + std::polar(r, 2.0 * kPi * rng.uniform());
        if (z != center && contains(domain, z)) {
            return z;
        }
    }
    throw SamplingError("could not place a point near the requested center");
}

Configuration sample_configuration(const Domain& domain, Rng& rng, std::size_t n, double min_gap,
                                   double min_bdry)
{
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        Configuration c;
        c.points.reserve(n);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            const Point z = sample_point(domain, rng);
            if (boundary_distance(domain, z) <= min_bdry) {
                ok = false;
                break;
            }
            for (const Point& p : c.points) {
                if (std::abs(p - z) <= min_gap || p == z) {
                    ok = false;
                    break;
                }
            }
            c.points.push_back(z);
        }
        if (ok) {
            return c;
        }
    }
    throw SamplingError("could not place a separated configuration");
}

}  // namespace vortex
