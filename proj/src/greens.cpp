#include "vortex/greens.hpp"

#include "vortex/errors.hpp"

#include <cmath>
#include <numeric>

namespace vortex {

namespace {

constexpr double kInv2Pi = 1.0 / (2.0 * kPi);
constexpr double kSeriesTol = 1e-14;

/// ln|1 - a|, accurate both for small |a| and for a near 1.
double log_abs_one_minus(Point a)
{
    if (std::norm(a) < 0.25) {
        return 0.5 * std::log1p(std::norm(a) - 2.0 * a.real());
    }
    const double re = 1.0 - a.real();
    return 0.5 * std::log(re * re + a.imag() * a.imag());
}

// ---- unit disk, in preimage coordinates ----------------------------------

std::pair<double, Point> disk_regular_first(Point w1, Point w2)
{
    const Point a = w1 * std::conj(w2);
    const double value = kInv2Pi * log_abs_one_minus(a);
    const Point grad = kInv2Pi * (-w2 / (1.0 - std::conj(w1) * w2));
    return {value, grad};
}

std::pair<double, Point> disk_green_first(Point w1, Point w2)
{
    auto [g, dg] = disk_regular_first(w1, w2);
    const Point diff = w1 - w2;
    return {g - kInv2Pi * std::log(std::abs(diff)), dg - kInv2Pi * diff / std::norm(diff)};
}

RobinEval disk_robin(Point w)
{
    const double r2 = std::norm(w);
    return {kInv2Pi * std::log1p(-r2), -w / (kPi * (1.0 - r2))};
}

// ---- annulus Dirichlet part ----------------------------------------------
//
// With P(u) = (1 - u) prod_{n>=1} (1 - q^{2n} u)(1 - q^{2n}/u) and
// P~(u) = P(u) / (1 - u):
//   R(x, y) = ln|P~(x/y)| - ln|P(x conj(y))| - ln|x| ln|y| / ln q
//   g0 = -R / 2pi,  G0 = g0 - ln|x - y| / 2pi.

std::pair<double, Point> annulus_R_first(Point x, Point y, double q)
{
    const Point zeta = x / y;
    const Point u = x * std::conj(y);
    const double lnq = std::log(q);

    double value = -log_abs_one_minus(u);
    Point dlog_pu = -1.0 / (1.0 - u);  // d/du log P(u)
    Point dlog_pt{};                   // d/dx log P~(x/y)

    const double scale = std::max({std::abs(zeta), 1.0 / std::abs(zeta), std::abs(u), 1.0 / std::abs(u)});
    const double q2 = q * q;
    double qn = q2;
    for (int n = 1; n < 100000; ++n) {
        const Point a1 = qn * zeta;
        const Point a2 = qn / zeta;
        const Point b1 = qn * u;
        const Point b2 = qn / u;
        value += log_abs_one_minus(a1) + log_abs_one_minus(a2) - log_abs_one_minus(b1) - log_abs_one_minus(b2);
        dlog_pt += -(qn / y) / (1.0 - a1) + (qn * y / (x * x)) / (1.0 - qn * y / x);
        dlog_pu += -qn / (1.0 - b1) + (qn / (u * u)) / (1.0 - b2);
        if (qn * scale < kSeriesTol) {
            break;
        }
        qn *= q2;
    }
    const double lnx = std::log(std::abs(x));
    const double lny = std::log(std::abs(y));
    value -= lnx * lny / lnq;

    const Point dlog_p = std::conj(y) * dlog_pu;
    const Point grad = std::conj(dlog_pt) - std::conj(dlog_p) - (lny / lnq) * x / std::norm(x);
    return {value, grad};
}

}  // namespace

// ---------------------------------------------------------------------------

PeriodVector PeriodVector::uniform(int holes)
{
    return PeriodVector{std::vector<double>(static_cast<std::size_t>(holes + 1), -1.0 / (holes + 1))};
}

void PeriodVector::check(int holes) const
{
    if (gamma.size() != static_cast<std::size_t>(holes + 1)) {
        throw DomainError("period vector needs one entry per boundary component");
    }
    const double total = std::accumulate(gamma.begin(), gamma.end(), 0.0);
    if (std::abs(total + 1.0) > 1e-12) {
        throw DomainError("periods must sum to -1");
    }
}

Greens::Greens(Domain domain) : Greens(domain, PeriodVector::uniform(domain.hole_count())) {}

Greens::Greens(Domain domain, PeriodVector periods)
    : domain_(std::move(domain)), periods_(std::move(periods))
{
    periods_.check(domain_.hole_count());
    if (domain_.kind() == DomainKind::annulus) {
        // Flux of the inner harmonic measure through the inner circle (normal out of the domain).
        const double flux = -2.0 * kPi / std::log(domain_.inner_radius());
        const double gamma1 = periods_.gamma[1];
        corr_c_ = 1.0 / flux;
        corr_b_ = gamma1 / flux;
        // Additive constant chosen so that sum_j gamma_j G|_{boundary j} = 0.
        corr_a_ = gamma1 * gamma1 / flux;
    }
}

Site Greens::site(Point z) const
{
    if (domain_.kind() == DomainKind::conformal) {
        const ConformalMap& m = domain_.map();
        const Point w = m.inverse(z);
        return Site{z, w, std::conj(1.0 / m.df(w))};
    }
    if (!contains(domain_, z)) {
        throw DomainError("point is not inside the domain");
    }
    return Site{z, z, Point{1.0, 0.0}};
}

Site Greens::boundary_site(const BoundaryPoint& b) const
{
    if (domain_.kind() == DomainKind::conformal) {
        const Point w = std::polar(1.0, b.theta);
        return Site{b.point, w, std::conj(1.0 / domain_.map().df(w))};
    }
    return Site{b.point, b.point, Point{1.0, 0.0}};
}

std::pair<double, Point> Greens::green_first(const Site& x, const Site& y) const
{
    switch (domain_.kind()) {
    case DomainKind::disk:
        return disk_green_first(x.w, y.w);
    case DomainKind::conformal: {
        auto [v, g] = disk_green_first(x.w, y.w);
        return {v, x.dw_conj * g};
    }
    case DomainKind::annulus: {
        auto [r, dr] = annulus_R_first(x.z, y.z, domain_.inner_radius());
        const Point diff = x.z - y.z;
        double value = -kInv2Pi * (std::log(std::abs(diff)) + r);
        Point grad = -kInv2Pi * (diff / std::norm(diff) + dr);
        const double ux = inner_harmonic_measure(domain_, x.z);
        const double uy = inner_harmonic_measure(domain_, y.z);
        const double lnq = std::log(domain_.inner_radius());
        value += corr_a_ + corr_b_ * (ux + uy) + corr_c_ * ux * uy;
        grad += (corr_b_ + corr_c_ * uy) * x.z / (std::norm(x.z) * lnq);
        return {value, grad};
    }
    }
    return {};
}

std::pair<double, Point> Greens::regular_first(const Site& x, const Site& y) const
{
    switch (domain_.kind()) {
    case DomainKind::disk:
        return disk_regular_first(x.w, y.w);
    case DomainKind::conformal: {
        auto [v, g] = disk_regular_first(x.w, y.w);
        const ConformalMap& m = domain_.map();
        const Point dq = m.divided_difference(x.w, y.w);
        const Point dq_a = m.divided_difference_da(x.w, y.w);
        v += kInv2Pi * std::log(std::abs(dq));
        g += kInv2Pi * std::conj(dq_a / dq);
        return {v, x.dw_conj * g};
    }
    case DomainKind::annulus: {
        auto [r, dr] = annulus_R_first(x.z, y.z, domain_.inner_radius());
        double value = -kInv2Pi * r;
        Point grad = -kInv2Pi * dr;
        const double ux = inner_harmonic_measure(domain_, x.z);
        const double uy = inner_harmonic_measure(domain_, y.z);
        const double lnq = std::log(domain_.inner_radius());
        value += corr_a_ + corr_b_ * (ux + uy) + corr_c_ * ux * uy;
        grad += (corr_b_ + corr_c_ * uy) * x.z / (std::norm(x.z) * lnq);
        return {value, grad};
    }
    }
    return {};
}

GreensEval Greens::green(const Site& x, const Site& y) const
{
    if (x.z == y.z) {
        throw SingularityError("Green's function evaluated at coincident points");
    }
    auto [v, gx] = green_first(x, y);
    auto [v2, gy] = green_first(y, x);
    (void)v2;
    return GreensEval{v, gx, gy};
}

GreensEval Greens::green(Point x, Point y) const
{
    return green(site(x), site(y));
}

RegularEval Greens::regular_part(const Site& x, const Site& y) const
{
    auto [v, gx] = regular_first(x, y);
    auto [v2, gy] = regular_first(y, x);
    (void)v2;
    return RegularEval{v, gx, gy};
}

RegularEval Greens::regular_part(Point x, Point y) const
{
    return regular_part(site(x), site(y));
}

RobinEval Greens::robin(const Site& x) const
{
    switch (domain_.kind()) {
    case DomainKind::disk:
        return disk_robin(x.w);
    case DomainKind::conformal: {
        RobinEval r = disk_robin(x.w);
        const ConformalMap& m = domain_.map();
        const Point d1 = m.df(x.w);
        r.h += kInv2Pi * std::log(std::abs(d1));
        r.grad_h = x.dw_conj * (r.grad_h + kInv2Pi * std::conj(m.d2f(x.w) / d1));
        return r;
    }
    case DomainKind::annulus: {
        // h = g(x, x); by symmetry grad h = 2 grad_1 g(x, x).
        auto [v, g] = regular_first(x, x);
        return RobinEval{v, 2.0 * g};
    }
    }
    return {};
}

RobinEval Greens::robin(Point x) const
{
    return robin(site(x));
}

// ---------------------------------------------------------------------------

double inner_harmonic_measure(const Domain& annulus, Point z)
{
    if (annulus.kind() != DomainKind::annulus) {
        throw UnsupportedError("harmonic measure is only available for the annulus");
    }
    return std::log(std::abs(z)) / std::log(annulus.inner_radius());
}

double hydrodynamic_correction(const Domain& domain, const PeriodVector& periods, Point x, Point y)
{
    if (domain.kind() != DomainKind::annulus) {
        throw UnsupportedError("hydrodynamic correction is only defined for the annulus model");
    }
    periods.check(1);
    const double flux = -2.0 * kPi / std::log(domain.inner_radius());
    const double gamma1 = periods.gamma[1];
    const double ux = inner_harmonic_measure(domain, x);
    const double uy = inner_harmonic_measure(domain, y);
    return gamma1 * gamma1 / flux + gamma1 / flux * (ux + uy) + ux * uy / flux;
}

double circle_flux(const Greens& greens, Point y, double radius, int nodes)
{
    if (greens.domain().kind() == DomainKind::conformal) {
        throw UnsupportedError("circle_flux expects a circular domain model");
    }
    const Site sy{y, y, Point{1.0, 0.0}};
    double total = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const Point u = std::polar(1.0, 2.0 * kPi * k / nodes);
        const Point x = radius * u;
        const Site sx{x, x, Point{1.0, 0.0}};
        const GreensEval e = greens.green(sx, sy);
        total += dot(e.grad_x, -u);
    }
    return total * 2.0 * kPi * radius / nodes;
}

}  // namespace vortex
