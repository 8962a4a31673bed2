#include "vortex/lemmas.hpp"

#include "vortex/admissibility.hpp"
#include "vortex/errors.hpp"
#include "vortex/hamiltonian.hpp"
#include "vortex/parallel.hpp"
#include "vortex/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace vortex {

namespace {

constexpr std::size_t kChunk = 256;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs body(rng, acc) for n samples in fixed chunks, each chunk with its own derived
// stream, and folds the chunk accumulators in chunk order.
template <class Acc, class Body, class Merge>
Acc chunked(std::size_t n, std::uint64_t seed, unsigned threads, const Acc& init, Body&& body, Merge&& merge)
{
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<Acc> parts(chunks, init);
    parallel_for(chunks, threads, [&](std::size_t c) {
        Rng rng(derive_seed(seed, c));
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            body(rng, parts[c]);
        }
    });
    Acc out = init;
    for (const Acc& p : parts) {
        merge(out, p);
    }
    return out;
}

Point foot(const Domain& domain, Point z) { return boundary_frame(domain, z).foot; }

// Point at boundary distance dist above boundary parameter s (dist below the collar width).
Point above(const Domain& domain, double s, double dist)
{
    const BoundaryPoint b = domain.boundary_point(s - std::floor(s));
    return b.point + dist * b.inward_normal;
}

}  // namespace

// ---------------------------------------------------------------------------

ProjectionCheck check_projection_derivative(const Domain& domain, std::size_t samples, std::uint64_t seed,
                                            unsigned threads)
{
    constexpr double h = 1e-6;
    const double eps = domain.collar_width();
    ProjectionCheck init;
    auto body = [&](Rng& rng, ProjectionCheck& acc) {
        const double dist = eps * rng.uniform(0.05, 0.9);
        const Point z = sample_at_distance(domain, rng, dist);
        const Point v = std::polar(1.0, 2.0 * kPi * rng.uniform());
        const BoundaryFrame f = boundary_frame(domain, z);
        const double stretch = 1.0 / (1.0 - f.curvature * f.dist);
        const Point expected = stretch * dot(v, f.tangent) * f.tangent;
        const Point fd = (foot(domain, z + h * v) - foot(domain, z - h * v)) / (2.0 * h);
        acc.max_rel_error = std::max(acc.max_rel_error, std::abs(fd - expected) / stretch);
        ++acc.samples;
    };
    auto merge = [](ProjectionCheck& a, const ProjectionCheck& b) {
        a.samples += b.samples;
        a.max_rel_error = std::max(a.max_rel_error, b.max_rel_error);
    };
    return chunked(samples, seed, threads, init, body, merge);
}

// ---------------------------------------------------------------------------

bool DistanceInequalities::ok() const
{
    return lower_violations == 0 && upper_violations == 0 && std::isfinite(c6) && std::isfinite(c7) &&
           std::isfinite(c8) && c6 > 0.0 && c7 > 0.0;
}

DistanceInequalities check_distance_inequalities(const Domain& domain, std::size_t pairs, std::uint64_t seed,
                                                 unsigned threads)
{
    const double eps = domain.collar_width();
    DistanceInequalities init;
    init.c6 = kInf;
    init.c7 = kInf;
    auto body = [&](Rng& rng, DistanceInequalities& acc) {
        const double s = rng.uniform();
        const Point x = above(domain, s, eps * rng.uniform(0.001, 0.999));
        const double t = rng.uniform() < 0.5 ? s + rng.uniform(-0.02, 0.02) : rng.uniform();
        const Point y = above(domain, t, eps * rng.uniform(0.001, 0.999));
        if (x == y) {
            return;
        }
        const BoundaryFrame fx = boundary_frame(domain, x);
        const BoundaryFrame fy = boundary_frame(domain, y);
        const Point xr = 2.0 * fx.foot - x;
        const Point yr = 2.0 * fy.foot - y;
        const double xy = std::abs(x - y);
        const double x_yr = std::abs(x - yr);
        const double xr_y = std::abs(xr - y);
        const double slack = 1e-12 * (1.0 + x_yr);
        if (fx.dist + fy.dist > x_yr + slack) {
            ++acc.lower_violations;
        }
        if (x_yr > xy + 2.0 * fy.dist + slack) {
            ++acc.upper_violations;
        }
        acc.c6 = std::min(acc.c6, x_yr / xy);
        const double pp = std::norm(fx.foot - fy.foot);
        if (pp > 0.0) {
            acc.c7 = std::min(acc.c7, x_yr * x_yr / pp);
            const double diff = x_yr - xr_y;
            acc.c8 = std::max(acc.c8, diff * diff / ((fx.dist + fy.dist) * pp));
        }
        ++acc.pairs;
    };
    auto merge = [](DistanceInequalities& a, const DistanceInequalities& b) {
        a.pairs += b.pairs;
        a.lower_violations += b.lower_violations;
        a.upper_violations += b.upper_violations;
        a.c6 = std::min(a.c6, b.c6);
        a.c7 = std::min(a.c7, b.c7);
        a.c8 = std::max(a.c8, b.c8);
    };
    return chunked(pairs, seed, threads, init, body, merge);
}

// ---------------------------------------------------------------------------

InteractionCheck check_boundary_interaction(const Greens& greens, std::span<const double> levels,
                                            std::size_t pairs, std::uint64_t seed, unsigned threads)
{
    const Domain& dom = greens.domain();
    if (levels.empty()) {
        throw std::invalid_argument("boundary interaction check needs at least one level");
    }
    for (double d : levels) {
        if (!(d > 0.0) || !(3.0 * d < dom.collar_width())) {
            throw std::invalid_argument("interaction levels must be positive and well inside the collar");
        }
    }
    const std::size_t m = levels.size();
    struct Acc {
        std::vector<double> err, amax, amin;
    };
    Acc init{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0), std::vector<double>(m, kInf)};
    auto body = [&](Rng& rng, Acc& acc) {
        const BoundaryPoint b = dom.boundary_point(rng.uniform());
        const double a = rng.uniform(0.1, 1.0);
        const double alpha = rng.uniform(-a + 0.05, 1.0);
        const double beta = rng.uniform(-2.0, 2.0);
        for (std::size_t k = 0; k < m; ++k) {
            const double d = levels[k];
            const Point y = b.point + d * a * b.inward_normal;
            const Point x = y + d * (alpha * b.inward_normal + beta * b.tangent);
            const BoundaryInteraction bi = boundary_interaction(greens, x, y);
            acc.err[k] = std::max(acc.err[k], std::abs(bi.exact - bi.predictor));
            acc.amax[k] = std::max(acc.amax[k], std::abs(bi.exact));
            acc.amin[k] = std::min(acc.amin[k], bi.exact);
        }
    };
    auto merge = [m](Acc& into, const Acc& p) {
        for (std::size_t k = 0; k < m; ++k) {
            into.err[k] = std::max(into.err[k], p.err[k]);
            into.amax[k] = std::max(into.amax[k], p.amax[k]);
            into.amin[k] = std::min(into.amin[k], p.amin[k]);
        }
    };
    const Acc acc = chunked(pairs, seed, threads, init, body, merge);

    InteractionCheck out;
    out.pairs_per_level = pairs;
    out.rate_ok = true;
    out.bound_ok = true;
    out.convex_ok = true;
    for (std::size_t k = 0; k < m; ++k) {
        out.levels.push_back({levels[k], acc.err[k], acc.amax[k], acc.amin[k]});
        if (levels[k] <= 1e-2) {
            out.bound_ok = out.bound_ok && acc.amax[k] <= 1.1;
            if (dom.strictly_convex()) {
                out.convex_ok = out.convex_ok && acc.amin[k] >= -0.1;
            }
        }
        if (k > 0) {
            const bool halved = levels[k] < levels[k - 1];
            out.rate_ok = out.rate_ok && halved && acc.err[k - 1] >= 1.5 * acc.err[k];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

bool LineBoundCheck::ok() const
{
    return samples > 0 && std::isfinite(sup_energy) && sequences_below == sequences;
}

namespace {

// Largest t with a + s v inside for all s in (0, t): march, then bisect.
double chord_length(const Domain& domain, Point a, Point v)
{
    const auto [lo, hi] = domain.bounding_box();
    const double span = std::abs(hi - lo);
    const double step = span / 512.0;
    double inside = 0.0;
    double t = step;
    while (contains(domain, a + t * v)) {
        inside = t;
        t += step;
        if (t > 2.0 * span) {
            throw SamplingError("chord does not leave the domain");
        }
    }
    double out = t;
    for (int k = 0; k < 80; ++k) {
        const double mid = 0.5 * (inside + out);
        (contains(domain, a + mid * v) ? inside : out) = mid;
    }
    return inside;
}

struct ChordSample {
    Point anchor;
    Point dir;
    double length = 0.0;
    std::vector<double> t;
};

ChordSample draw_chord(const Domain& domain, Rng& rng, std::size_t n)
{
    for (int attempt = 0; attempt < 1000; ++attempt) {
        ChordSample c;
        const BoundaryPoint b = domain.boundary_point(rng.uniform());
        c.anchor = b.point;
        c.dir = b.inward_normal * std::polar(1.0, rng.uniform(-0.45, 0.45) * kPi);
        // The first step must already be inside; skip anchors where it is not resolvable.
        if (!contains(domain, c.anchor + 1e-9 * c.dir)) {
            continue;
        }
        c.length = chord_length(domain, c.anchor, c.dir);
        c.t.resize(n);
        for (auto& t : c.t) {
            t = rng.uniform(0.0, c.length);
        }
        std::sort(c.t.begin(), c.t.end());
        bool ok = c.t.front() > 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            ok = ok && c.t[j] > c.t[j - 1];
        }
        if (ok) {
            return c;
        }
    }
    throw SamplingError("could not draw a line chart");
}

Configuration chart_points(const ChordSample& c, const std::vector<double>& t)
{
    Configuration z;
    for (double s : t) {
        z.points.push_back(c.anchor + s * c.dir);
    }
    return z;
}

}  // namespace

LineBoundCheck check_line_bound(const Greens& greens, std::span<const double> gamma, std::size_t samples,
                                std::size_t sequences, std::uint64_t seed, unsigned threads)
{
    check_vorticity(gamma);
    const Domain& dom = greens.domain();
    const std::size_t n = gamma.size();
    struct Acc {
        double sup = -kInf;
        double min = kInf;
        std::size_t count = 0;
    };
    auto body = [&](Rng& rng, Acc& acc) {
        const ChordSample c = draw_chord(dom, rng, n);
        const Configuration z = chart_points(c, c.t);
        if (!is_valid(dom, z)) {
            return;
        }
        const double e = energy(greens, gamma, z);
        acc.sup = std::max(acc.sup, e);
        acc.min = std::min(acc.min, e);
        ++acc.count;
    };
    auto merge = [](Acc& a, const Acc& b) {
        a.sup = std::max(a.sup, b.sup);
        a.min = std::min(a.min, b.min);
        a.count += b.count;
    };
    const Acc grid = chunked(samples, seed, threads, Acc{}, body, merge);

    LineBoundCheck out;
    out.samples = grid.count;
    out.sup_energy = grid.sup;
    out.min_energy = grid.min;
    out.sequences = sequences;

    // Strongest attracting neighbour pair: the gap whose closing is most singular.
    std::size_t gap = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (gamma[j] * gamma[j + 1] < gamma[gap] * gamma[gap + 1]) {
            gap = j;
        }
    }
    Rng rng(derive_seed(seed, 0x5e9u));
    for (std::size_t k = 0; k < sequences; ++k) {
        const ChordSample c = draw_chord(dom, rng, n);
        const int kind = n >= 2 ? static_cast<int>(k % 4) : static_cast<int>(k % 2);
        double best = kInf;
        for (int m = 1; m <= 200; ++m) {
            const double f = std::ldexp(1.0, -m);
            std::vector<double> t = c.t;
            switch (kind) {
            case 0:  // all vortices onto the anchor
                for (auto& s : t) {
                    s *= f;
                }
                break;
            case 1:  // all vortices onto the exit point
                for (auto& s : t) {
                    s = c.length - f * (c.length - s);
                }
                break;
            case 2: {  // close one gap around its midpoint
                const double mid = 0.5 * (t[gap] + t[gap + 1]);
                t[gap] = mid - f * (mid - t[gap]);
                t[gap + 1] = mid + f * (t[gap + 1] - mid);
                break;
            }
            default:  // last vortex onto the exit point
                t[n - 1] = c.length - f * (c.length - t[n - 1]);
                break;
            }
            const Configuration z = chart_points(c, t);
            if (!is_valid(dom, z)) {
                break;
            }
            // Stop where double precision no longer resolves the approach.
            const double e = energy(greens, gamma, z);
            if (!std::isfinite(e)) {
                break;
            }
            best = std::min(best, e);
            if (best < out.min_energy) {
                break;
            }
        }
        out.sequence_energy.push_back(best);
        if (best < out.min_energy) {
            ++out.sequences_below;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct FloorAcc {
    std::vector<char> ok;  ///< calibration: bound held at level k for every sample
    std::size_t verified = 0;
    std::size_t violations = 0;
    double worst = kInf;
};

FloorCheck run_floor(std::span<const double> levels, std::size_t samples, std::uint64_t seed, unsigned threads,
                     double floor_at_bottom,
                     const std::function<double(Rng&, double, bool)>& margin)
{
    // margin(rng, scale, fresh): draws (fresh == true) or replays a shape at the given scale and
    // returns observed - bound. Calibration shapes are drawn per sample and evaluated on all levels.
    const std::size_t m = levels.size();
    FloorAcc init;
    init.ok.assign(m, 1);
    auto calib = [&](Rng& rng, FloorAcc& acc) {
        for (std::size_t k = 0; k < m; ++k) {
            if (!(margin(rng, levels[k], k == 0) >= 0.0)) {
                acc.ok[k] = 0;
            }
        }
    };
    auto merge = [m](FloorAcc& a, const FloorAcc& b) {
        for (std::size_t k = 0; k < m; ++k) {
            a.ok[k] = static_cast<char>(a.ok[k] && b.ok[k]);
        }
        a.verified += b.verified;
        a.violations += b.violations;
        a.worst = std::min(a.worst, b.worst);
    };
    const FloorAcc cal = chunked(samples, seed, threads, init, calib, merge);

    FloorCheck out;
    // Levels are decreasing; the threshold is the largest level below which every level passed.
    for (std::size_t k = m; k-- > 0;) {
        if (!cal.ok[k]) {
            break;
        }
        out.threshold = levels[k];
    }
    if (out.threshold == 0.0) {
        return out;
    }
    auto verify = [&](Rng& rng, FloorAcc& acc) {
        const double scale = rng.log_uniform(floor_at_bottom, out.threshold);
        const double mg = margin(rng, scale, true);
        ++acc.verified;
        if (!(mg >= 0.0)) {
            ++acc.violations;
        }
        acc.worst = std::min(acc.worst, mg);
    };
    FloorAcc vinit;
    vinit.ok.assign(m, 1);
    const FloorAcc ver = chunked(samples, derive_seed(seed, 0xf100u), threads, vinit, verify, merge);
    out.verified = ver.verified;
    out.violations = ver.violations;
    out.worst_margin = ver.worst;
    return out;
}

std::vector<double> half_decades(double hi_exp, double lo_exp)
{
    std::vector<double> v;
    for (double e = hi_exp; e >= lo_exp - 1e-9; e -= 0.5) {
        v.push_back(std::pow(10.0, e));
    }
    return v;
}

}  // namespace

FloorCheck check_interior_collision(const Greens& greens, std::span<const double> gamma, std::size_t samples,
                                    std::uint64_t seed, unsigned threads)
{
    check_vorticity(gamma);
    const std::size_t n = gamma.size();
    if (n < 2) {
        throw std::invalid_argument("interior collision check needs N >= 2");
    }
    const CollisionWeight cw = collision_weight_constant(gamma);
    if (!cw.delta_admissible) {
        throw ConfigurationError("interior collision floor needs a Delta-admissible vorticity vector");
    }
    const Domain& dom = greens.domain();
    const double bound_const = cw.value / (4.0 * kPi);

    // A shape: cluster mask, center, unit-normalized centered offsets, background points.
    struct Shape {
        std::vector<int> cluster;
        Point center;
        std::vector<Point> offsets;
        std::vector<Point> others;
    };
    auto draw = [&](Rng& rng) {
        Shape s;
        while (s.cluster.size() < 2) {
            s.cluster.clear();
            for (std::size_t i = 0; i < n; ++i) {
                if (rng.uniform() < 0.5) {
                    s.cluster.push_back(static_cast<int>(i));
                }
            }
        }
        do {
            s.center = sample_point(dom, rng);
        } while (boundary_distance(dom, s.center) < 0.15);
        Point mean{};
        for (std::size_t k = 0; k < s.cluster.size(); ++k) {
            s.offsets.push_back(std::polar(std::sqrt(rng.uniform()), 2.0 * kPi * rng.uniform()));
            mean += s.offsets.back();
        }
        mean /= static_cast<double>(s.cluster.size());
        double norm2 = 0.0;
        for (auto& o : s.offsets) {
            o -= mean;
            norm2 += std::norm(o);
        }
        for (auto& o : s.offsets) {
            o /= std::sqrt(norm2);
        }
        for (std::size_t i = s.cluster.size(); i < n; ++i) {
            for (;;) {
                const Point p = sample_point(dom, rng);
                bool ok = boundary_distance(dom, p) > 0.05 && std::abs(p - s.center) > 0.2;
                for (Point q : s.others) {
                    ok = ok && std::abs(p - q) > 0.05;
                }
                if (ok) {
                    s.others.push_back(p);
                    break;
                }
            }
        }
        return s;
    };
    auto margin_for = [&](const Shape& s, double r) {
        Configuration z;
        z.points.resize(n);
        std::size_t oi = 0;
        std::vector<char> in(n, 0);
        for (std::size_t k = 0; k < s.cluster.size(); ++k) {
            z[static_cast<std::size_t>(s.cluster[k])] = s.center + r * s.offsets[k];
            in[static_cast<std::size_t>(s.cluster[k])] = 1;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!in[i]) {
                z[i] = s.others[oi++];
            }
        }
        const double g = energy_gradient(greens, gamma, z).norm();
        return g - bound_const / r;
    };
    // Calibration replays one shape (drawn at the first level) over all levels.
    auto margin_tl = [&](Rng& rng, double r, bool fresh) -> double {
        thread_local Shape last;
        if (fresh) {
            last = draw(rng);
        }
        return margin_for(last, r);
    };
    FloorCheck out = run_floor(half_decades(-1.0, -6.0), samples, seed, threads, 1e-7, margin_tl);
    out.constant = cw.value;
    return out;
}

FloorCheck check_boundary_pairing(const Greens& greens, std::span<const double> gamma, std::size_t samples,
                                  std::uint64_t seed, unsigned threads)
{
    check_vorticity(gamma);
    const std::size_t n = gamma.size();
    const Domain& dom = greens.domain();
    std::vector<int> cluster(n);
    for (std::size_t i = 0; i < n; ++i) {
        cluster[i] = static_cast<int>(i);
    }
    const double eps_c = boundary_weight_constant(gamma, cluster, dom.strictly_convex());

    struct Shape {
        BoundaryPoint b;
        std::vector<double> normal;
        std::vector<double> tangential;
    };
    auto draw = [&](Rng& rng) {
        Shape s;
        s.b = dom.boundary_point(rng.uniform());
        for (;;) {
            s.normal.assign(n, 0.0);
            s.tangential.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                s.normal[i] = rng.uniform(0.2, 1.0);
                s.tangential[i] = rng.uniform(-1.0, 1.0);
            }
            double gap = kInf;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    gap = std::min(gap, std::hypot(s.normal[i] - s.normal[j], s.tangential[i] - s.tangential[j]));
                }
            }
            if (gap > 0.05) {
                return s;
            }
        }
    };
    auto margin_for = [&](const Shape& s, double d) {
        Configuration z;
        for (std::size_t i = 0; i < n; ++i) {
            z.points.push_back(s.b.point + d * (s.normal[i] * s.b.inward_normal + s.tangential[i] * s.b.tangent));
        }
        return boundary_pairing(greens, gamma, z, cluster) - (eps_c - 0.1);
    };
    auto margin_tl = [&](Rng& rng, double d, bool fresh) -> double {
        thread_local Shape last;
        if (fresh) {
            last = draw(rng);
        }
        return margin_for(last, d);
    };
    FloorCheck out = run_floor(half_decades(-2.0, -6.0), samples, seed, threads, 1e-7, margin_tl);
    out.constant = eps_c;
    return out;
}

SpokeBound check_spoke_bound(const Greens& greens, std::span<const double> gamma, std::size_t samples,
                             std::uint64_t seed)
{
    check_vorticity(gamma);
    const Domain& dom = greens.domain();
    if (dom.kind() != DomainKind::annulus) {
        throw UnsupportedError("the spoke set is defined for the annulus");
    }
    const double q = dom.inner_radius();
    const std::size_t n = gamma.size();
    Rng rng(seed);
    SpokeBound out;
    out.sup_energy = -kInf;
    for (std::size_t k = 0; k < samples; ++k) {
        Configuration z;
        for (std::size_t j = 1; j <= n; ++j) {
            const double r = rng.uniform(q, 1.0);
            if (!(r > q)) {
                continue;
            }
            z.points.push_back(r * std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n)));
        }
        if (z.size() != n || !is_valid(dom, z)) {
            continue;
        }
        out.sup_energy = std::max(out.sup_energy, energy(greens, gamma, z));
        ++out.samples;
    }
    return out;
}

}  // namespace vortex
