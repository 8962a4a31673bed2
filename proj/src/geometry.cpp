#include "vortex/geometry.hpp"

#include "vortex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vortex {

namespace {

constexpr Point kI{0.0, 1.0};

BoundaryPoint circle_point(double radius, double theta, bool outer)
{
    BoundaryPoint b;
    const Point u = std::polar(1.0, theta);
    b.point = radius * u;
    b.inward_normal = outer ? -u : u;
    b.tangent = -kI * b.inward_normal;
    b.curvature = outer ? 1.0 / radius : -1.0 / radius;
    b.component = outer ? 0 : 1;
    b.theta = theta;
    return b;
}

BoundaryFrame frame_from(const BoundaryPoint& b, Point z, double collar)
{
    BoundaryFrame fr;
    fr.foot = b.point;
    fr.dist = std::abs(z - b.point);
    fr.inward_normal = b.inward_normal;
    fr.tangent = b.tangent;
    fr.curvature = b.curvature;
    fr.in_collar = fr.dist < collar;
    return fr;
}

}  // namespace

// ---------------------------------------------------------------------------
// Domain
// ---------------------------------------------------------------------------

Domain::Domain(Model m) : model_(std::move(m)) {}

Domain Domain::unit_disk()
{
    Domain d{UnitDisk{}};
    d.collar_ = 0.5;
    return d;
}

Domain Domain::annulus(double inner_radius)
{
    if (!(inner_radius > 0.0 && inner_radius < 1.0)) {
        throw DomainError("annulus inner radius must lie in (0, 1)");
    }
    Domain d{Annulus{inner_radius}};
    d.collar_ = 0.5 * std::min(inner_radius, 1.0 - inner_radius);
    return d;
}

Domain Domain::conformal(std::vector<Point> coeffs)
{
    auto map = std::make_shared<const ConformalMap>(coeffs);
    Domain d{ConformalImage{map->coeffs()}};
    d.collar_ = map->collar_width();
    d.map_ = std::move(map);
    return d;
}

DomainKind Domain::kind() const
{
    return static_cast<DomainKind>(model_.index());
}

double Domain::inner_radius() const
{
    if (const auto* a = std::get_if<Annulus>(&model_)) {
        return a->inner_radius;
    }
    return 0.0;
}

const ConformalMap& Domain::map() const
{
    if (!map_) {
        throw UnsupportedError("domain is not a conformal image");
    }
    return *map_;
}

bool Domain::strictly_convex() const
{
    switch (kind()) {
    case DomainKind::disk:
        return true;
    case DomainKind::annulus:
        return false;
    case DomainKind::conformal:
        return map_->min_curvature() > 0.0;
    }
    return false;
}

Point Domain::center() const
{
    return kind() == DomainKind::conformal ? map_->f(Point{}) : Point{};
}

std::pair<Point, Point> Domain::bounding_box() const
{
    if (kind() == DomainKind::conformal) {
        return map_->bounding_box();
    }
    return {Point{-1.0, -1.0}, Point{1.0, 1.0}};
}

BoundaryPoint Domain::boundary_point(double s) const
{
    s -= std::floor(s);
    switch (kind()) {
    case DomainKind::disk:
        return circle_point(1.0, 2.0 * kPi * s, true);
    case DomainKind::annulus: {
        const double q = inner_radius();
        const double split = 1.0 / (1.0 + q);
        if (s < split) {
            return circle_point(1.0, 2.0 * kPi * s / split, true);
        }
        return circle_point(q, 2.0 * kPi * (s - split) / (1.0 - split), false);
    }
    case DomainKind::conformal: {
        const double theta = 2.0 * kPi * s;
        BoundaryPoint b;
        b.point = map_->curve(theta);
        const Point t = map_->curve_d1(theta);
        b.tangent = t / std::abs(t);
        b.inward_normal = kI * b.tangent;
        b.curvature = map_->curvature(theta);
        b.theta = theta;
        return b;
    }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

bool contains(const Domain& domain, Point z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        return false;
    }
    switch (domain.kind()) {
    case DomainKind::disk:
        return std::norm(z) < 1.0;
    case DomainKind::annulus: {
        const double r = std::abs(z);
        return r > domain.inner_radius() && r < 1.0;
    }
    case DomainKind::conformal: {
        Point w;
        try {
            return domain.map().try_inverse(z, w);
        } catch (const ConvergenceError&) {
            return domain.map().winding_number(z) != 0;
        }
    }
    }
    return false;
}

BoundaryFrame boundary_frame(const Domain& domain, Point z)
{
    if (!contains(domain, z)) {
        throw DomainError("boundary_frame: point is not inside the domain");
    }
    switch (domain.kind()) {
    case DomainKind::disk: {
        const double r = std::abs(z);
        const double theta = r > 0.0 ? std::arg(z) : 0.0;
        BoundaryFrame fr = frame_from(circle_point(1.0, theta, true), z, domain.collar_width());
        fr.dist = 1.0 - r;
        fr.in_collar = fr.dist < domain.collar_width();
        return fr;
    }
    case DomainKind::annulus: {
        const double q = domain.inner_radius();
        const double r = std::abs(z);
        const double theta = std::arg(z);
        const bool outer = (1.0 - r) <= (r - q);
        BoundaryFrame fr =
            frame_from(circle_point(outer ? 1.0 : q, theta, outer), z, domain.collar_width());
        fr.dist = outer ? 1.0 - r : r - q;
        fr.in_collar = fr.dist < domain.collar_width();
        return fr;
    }
    case DomainKind::conformal: {
        const double theta = domain.map().nearest_parameter(z);
        return frame_from(domain.boundary_point(theta / (2.0 * kPi)), z, domain.collar_width());
    }
    }
    return {};
}

double boundary_distance(const Domain& domain, Point z)
{
    switch (domain.kind()) {
    case DomainKind::disk:
        return 1.0 - std::abs(z);
    case DomainKind::annulus: {
        const double r = std::abs(z);
        return std::min(1.0 - r, r - domain.inner_radius());
    }
    case DomainKind::conformal:
        return boundary_frame(domain, z).dist;
    }
    return 0.0;
}

Point reflect(const Domain& domain, Point z)
{
    const BoundaryFrame fr = boundary_frame(domain, z);
    if (!fr.in_collar) {
        throw CollarError("reflect: point is outside the collar");
    }
    return 2.0 * fr.foot - z;
}

// ---------------------------------------------------------------------------
// Configurations
// ---------------------------------------------------------------------------

void validate(const Domain& domain, const Configuration& c)
{
    if (c.size() == 0) {
        throw ConfigurationError("empty configuration");
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!contains(domain, c[i])) {
            throw ConfigurationError("vortex " + std::to_string(i + 1) + " is not inside the domain");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (c[i] == c[j]) {
                throw ConfigurationError("vortices " + std::to_string(j + 1) + " and " +
                                         std::to_string(i + 1) + " coincide");
            }
        }
    }
}

bool is_valid(const Domain& domain, const Configuration& c)
{
    try {
        validate(domain, c);
        return true;
    } catch (const ConfigurationError&) {
        return false;
    }
}

Permutation Permutation::identity(std::size_t n)
{
    Permutation p;
    p.img_.resize(n);
    std::iota(p.img_.begin(), p.img_.end(), 0);
    return p;
}

Permutation Permutation::from_images(std::vector<int> images)
{
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
        if (v < 0 || static_cast<std::size_t>(v) >= images.size() || seen[v]) {
            throw std::invalid_argument("permutation images must be a bijection");
        }
        seen[v] = true;
    }
    Permutation p;
    p.img_ = std::move(images);
    return p;
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<std::vector<int>>& cycles)
{
    Permutation p = identity(n);
    for (const auto& cyc : cycles) {
        Permutation c = identity(n);
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            const int from = cyc[k] - 1;
            const int to = cyc[(k + 1) % cyc.size()] - 1;
            if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= n ||
                static_cast<std::size_t>(to) >= n) {
                throw std::invalid_argument("cycle entry out of range");
            }
            c.img_[from] = to;
        }
        p = compose(p, from_images(c.img_));
    }
    return p;
}

Permutation Permutation::inverse() const
{
    Permutation p;
    p.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) {
        p.img_[img_[i]] = static_cast<int>(i);
    }
    return p;
}

bool Permutation::is_identity() const
{
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (img_[i] != static_cast<int>(i)) {
            return false;
        }
    }
    return true;
}

Permutation compose(const Permutation& sigma, const Permutation& rho)
{
    if (sigma.size() != rho.size()) {
        throw std::invalid_argument("compose: size mismatch");
    }
    std::vector<int> img(sigma.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        img[i] = sigma(static_cast<std::size_t>(rho(i)));
    }
    return Permutation::from_images(std::move(img));
}

Configuration permute(const Permutation& sigma, const Configuration& c)
{
    if (sigma.size() != c.size()) {
        throw std::invalid_argument("permute: permutation and configuration sizes differ");
    }
    return Configuration{permute(sigma, std::span<const Point>(c.points))};
}

Configuration line_configuration(const Domain& domain, const LineChart& chart)
{
    const std::size_t n = chart.params.size();
    if (std::abs(std::abs(chart.direction) - 1.0) > 1e-12) {
        throw ChartError("line chart direction must be a unit vector");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!(chart.params[j] > 0.0) || (j > 0 && !(chart.params[j] > chart.params[j - 1]))) {
            throw ChartError("line chart parameters must be positive and strictly increasing");
        }
    }
    Configuration line;
    line.points.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Point z = chart.anchor + chart.params[j] * chart.direction;
        if (!contains(domain, z)) {
            throw DomainError("line chart point " + std::to_string(j + 1) + " is outside the domain",
                              static_cast<std::ptrdiff_t>(j));
        }
        line.points.push_back(z);
    }
    const Permutation sigma = chart.perm.size() == 0 ? Permutation::identity(n) : chart.perm;
    return permute(sigma.inverse(), line);
}

Separation min_separation(const Domain& domain, const Configuration& c)
{
    Separation s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        s.min_bdry = std::min(s.min_bdry, boundary_distance(domain, c[i]));
        for (std::size_t j = 0; j < i; ++j) {
            s.min_pair = std::min(s.min_pair, std::abs(c[i] - c[j]));
        }
    }
    return s;
}

}  // namespace vortex
