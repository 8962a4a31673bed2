#include "vortex/errors.hpp"
#include "vortex/greens.hpp"
#include "vortex/parallel.hpp"
#include "vortex/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vortex {

namespace {

constexpr std::size_t kChunk = 256;
constexpr double kLaplaceMesh = 1e-4;
constexpr double kLaplaceClearance = 0.1;

HypothesisAuditReport empty_report()
{
    HypothesisAuditReport r;
    r.c0_hat = std::numeric_limits<double>::infinity();
    r.c1_hat = -std::numeric_limits<double>::infinity();
    r.c4_hat = -std::numeric_limits<double>::infinity();
    return r;
}

void merge(HypothesisAuditReport& into, const HypothesisAuditReport& r)
{
    into.c0_hat = std::min(into.c0_hat, r.c0_hat);
    into.c1_hat = std::max(into.c1_hat, r.c1_hat);
    into.c2_hat = std::max(into.c2_hat, r.c2_hat);
    into.c3_hat = std::max(into.c3_hat, r.c3_hat);
    into.c4_hat = std::max(into.c4_hat, r.c4_hat);
    into.boundary_residual = std::max(into.boundary_residual, r.boundary_residual);
    into.symmetry_residual = std::max(into.symmetry_residual, r.symmetry_residual);
    into.laplacian_residual = std::max(into.laplacian_residual, r.laplacian_residual);
    into.samples += r.samples;
}

double laplacian(const Greens& greens, Point x, Point y)
{
    const double h = kLaplaceMesh;
    const Site sy = greens.site(y);
    auto val = [&](Point p) { return greens.green(greens.site(p), sy).value; };
    const double c = val(x);
    return (val(x + h) + val(x - h) + val(x + Point{0.0, h}) + val(x - Point{0.0, h}) - 4.0 * c) / (h * h);
}

void audit_one(const Greens& greens, double eps, Rng& rng, HypothesisAuditReport& rep)
{
    const Domain& dom = greens.domain();
    const Point x = sample_point(dom, rng);
    const Point y = sample_point(dom, rng);
    if (x == y) {
        return;
    }
    const Site sx = greens.site(x);
    const Site sy = greens.site(y);

    // Lower bound of G, upper bound of g, derivative bounds off the diagonal.
    const GreensEval e = greens.green(sx, sy);
    const GreensEval swapped = greens.green(sy, sx);
    rep.c0_hat = std::min(rep.c0_hat, e.value);
    rep.symmetry_residual = std::max(rep.symmetry_residual, std::abs(e.value - swapped.value));
    if (std::abs(x - y) >= eps) {
        rep.c2_hat = std::max(rep.c2_hat, std::abs(e.value) + std::abs(e.grad_x) + std::abs(e.grad_y));
    }
    rep.c1_hat = std::max(rep.c1_hat, greens.regular_part(sx, sy).g);
    rep.c1_hat = std::max(rep.c1_hat, greens.robin(sx).h);

    // Boundary condition.
    const BoundaryPoint b = dom.boundary_point(rng.uniform());
    const GreensEval eb = greens.green(greens.boundary_site(b), sy);
    const double bres =
        dom.kind() == DomainKind::annulus ? std::abs(dot(eb.grad_x, b.tangent)) : std::abs(eb.value);
    rep.boundary_residual = std::max(rep.boundary_residual, bres);

    // Harmonicity away from the pole and the boundary.
    if (std::abs(x - y) > kLaplaceClearance && boundary_distance(dom, x) > kLaplaceClearance) {
        rep.laplacian_residual = std::max(rep.laplacian_residual, std::abs(laplacian(greens, x, y)));
    }

    // Reflection remainder on a collar pair; half of the pairs are close together.
    const double collar = dom.collar_width();
    const Point cx = sample_at_distance(dom, rng, collar * rng.uniform(1e-6, 1.0));
    Point cy;
    if (rng.uniform() < 0.5) {
        cy = sample_at_distance(dom, rng, collar * rng.uniform(1e-6, 1.0));
    } else {
        cy = cx + std::polar(collar * rng.log_uniform(1e-6, 1.0), 2.0 * kPi * rng.uniform());
    }
    if (cx != cy && contains(dom, cy) && boundary_distance(dom, cy) < collar) {
        const RegularEval psi = reflection_remainder(greens, cx, cy);
        rep.c3_hat = std::max(rep.c3_hat, std::abs(psi.g) + std::abs(psi.grad_x) + std::abs(psi.grad_y));
    }

    // Line bound: G(w+rv, w+sv) - G(w+rv, w+tv) >= -C4 for r < s < t.
    const auto [lo, hi] = dom.bounding_box();
    const double diam = std::abs(hi - lo);
    const Point w = sample_point(dom, rng);
    const Point v = std::polar(1.0, 2.0 * kPi * rng.uniform());
    for (int attempt = 0; attempt < 20; ++attempt) {
        const double r = rng.uniform(-diam, diam);
        const double s = r + rng.log_uniform(1e-6 * diam, diam);
        const double t = s + rng.log_uniform(1e-6 * diam, diam);
        const Point pr = w + r * v;
        const Point ps = w + s * v;
        const Point pt = w + t * v;
        if (!contains(dom, pr) || !contains(dom, ps) || !contains(dom, pt)) {
            continue;
        }
        const Site sr = greens.site(pr);
        const double diff = greens.green(sr, greens.site(ps)).value - greens.green(sr, greens.site(pt)).value;
        rep.c4_hat = std::max(rep.c4_hat, -diff);
        break;
    }
    ++rep.samples;
}

}  // namespace

RegularEval reflection_remainder(const Greens& greens, Point x, Point y)
{
    const BoundaryFrame fr = boundary_frame(greens.domain(), x);
    if (!fr.in_collar) {
        throw CollarError("reflection remainder needs x inside the collar", 0);
    }
    const Point xbar = 2.0 * fr.foot - x;
    const RegularEval g = greens.regular_part(x, y);
    const Point u = xbar - y;
    const double n2 = std::norm(u);
    // grad_x ln|xbar - y| = (2 Dp - I)^T u / |u|^2 with Dp = tau tau^T / (1 - kappa d).
    const Point dp_u = (dot(u, fr.tangent) / (1.0 - fr.curvature * fr.dist)) * fr.tangent;
    const Point grad_x = (2.0 * dp_u - u) / n2;
    const Point grad_y = -u / n2;
    const double c = 1.0 / (2.0 * kPi);
    return RegularEval{g.g - c * 0.5 * std::log(n2), g.grad_x - c * grad_x, g.grad_y - c * grad_y};
}

HypothesisAuditReport hypothesis_audit(const Greens& greens, std::size_t sample_count, double eps,
                                       std::uint64_t seed, unsigned threads)
{
    if (sample_count < 1000) {
        throw std::invalid_argument("hypothesis_audit: at least 1000 samples are required");
    }
    const std::size_t chunks = (sample_count + kChunk - 1) / kChunk;
    std::vector<HypothesisAuditReport> parts(chunks, empty_report());
    parallel_for(chunks, threads, [&](std::size_t c) {
        Rng rng(derive_seed(seed, c));
        const std::size_t end = std::min(sample_count, (c + 1) * kChunk);
        for (std::size_t k = c * kChunk; k < end; ++k) {
            audit_one(greens, eps, rng, parts[c]);
        }
    });
    HypothesisAuditReport out = empty_report();
    for (const auto& p : parts) {
        merge(out, p);
    }
    return out;
}

}  // namespace vortex
