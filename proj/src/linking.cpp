#include "vortex/linking.hpp"

#include "vortex/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace vortex {

namespace {

void check_unit(std::span<const Point> zeta)
{
    for (const Point& z : zeta) {
        if (std::abs(std::abs(z) - 1.0) > 1e-12) {
            throw SpecError("torus coordinates must be unit complex numbers");
        }
    }
}

// exp(2 pi i k / angles), exact on the quarter turns so symmetric seeds stay symmetric.
Point grid_angle(int k, int angles)
{
    if ((4 * k) % angles == 0) {
        static constexpr Point quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        return quarter[((4 * k) / angles) % 4];
    }
    return std::polar(1.0, 2.0 * kPi * k / angles);
}

// Odometer over angles^dims grid points, calling fn(zeta) in lexicographic order.
template <class Fn>
void for_each_grid_point(std::size_t dims, int angles, Fn&& fn)
{
    std::vector<int> k(dims, 0);
    std::vector<Point> zeta(dims);
    for (;;) {
        for (std::size_t d = 0; d < dims; ++d) {
            zeta[d] = grid_angle(k[d], angles);
        }
        fn(std::span<const Point>(zeta));
        std::size_t d = dims;
        while (d > 0) {
            --d;
            if (++k[d] < angles) {
                break;
            }
            k[d] = 0;
            if (d == 0) {
                return;
            }
        }
        if (dims == 0) {
            return;
        }
    }
}

}  // namespace

TorusSeedSpec resolve_spec(const Domain& domain, TorusSeedSpec spec)
{
    if (spec.n < 1 || spec.angles < 1) {
        throw SpecError("seed spec needs N >= 1 and at least one angle per dimension");
    }
    if (spec.kind == SeedKind::concentric) {
        if (spec.rho <= 0.0) {
            const Point c = domain.center();
            if (!contains(domain, c)) {
                throw DomainError("concentric seeds need the domain center inside the domain");
            }
            spec.rho = boundary_distance(domain, c) / static_cast<double>(spec.n + 1);
        }
    } else {
        if (domain.kind() != DomainKind::annulus) {
            throw SpecError("annular seeds require an annulus");
        }
        if (spec.levels.empty()) {
            const double q = domain.inner_radius();
            for (std::size_t j = 1; j <= spec.n; ++j) {
                spec.levels.push_back(q + static_cast<double>(j) * (1.0 - q) / static_cast<double>(spec.n + 1));
            }
        }
    }
    return spec;
}

Configuration concentric_seed(const Domain& domain, const TorusSeedSpec& spec_in, std::span<const Point> zeta)
{
    const TorusSeedSpec spec = resolve_spec(domain, spec_in);
    const std::size_t n = spec.n;
    if (n < 2 || zeta.size() != n - 2) {
        throw SpecError("concentric seed needs N >= 2 and N - 2 torus coordinates");
    }
    check_unit(zeta);
    const Point c = domain.center();
    const double reach = static_cast<double>(n) * spec.rho;
    if (!contains(domain, c) || !(boundary_distance(domain, c) > reach)) {
        throw DomainError("closed ball of radius N rho around the center is not inside the domain");
    }
    Configuration out;
    out.points.resize(n);
    out[0] = c;
    for (std::size_t j = 2; j + 1 <= n; ++j) {
        out[j - 1] = c + static_cast<double>(j - 1) * spec.rho * zeta[j - 2];
    }
    out[n - 1] = c + static_cast<double>(n - 1) * spec.rho;
    return out;
}

Configuration annular_seed(const Domain& domain, const TorusSeedSpec& spec_in, std::span<const Point> zeta)
{
    if (spec_in.kind != SeedKind::annular) {
        throw SpecError("spec is not annular");
    }
    const TorusSeedSpec spec = resolve_spec(domain, spec_in);
    if (zeta.size() != spec.n || spec.levels.size() != spec.n) {
        throw SpecError("annular seed needs N torus coordinates and N levels");
    }
    check_unit(zeta);
    const double q = domain.inner_radius();
    for (std::size_t j = 0; j < spec.n; ++j) {
        const double r = spec.levels[j];
        if (!(r > q && r < 1.0) || (j > 0 && !(r > spec.levels[j - 1]))) {
            throw SpecError("annular levels must increase strictly inside the annulus (level " +
                            std::to_string(j + 1) + ")");
        }
    }
    Configuration out;
    out.points.resize(spec.n);
    for (std::size_t j = 0; j < spec.n; ++j) {
        out[j] = spec.levels[j] * zeta[j];
    }
    return out;
}

std::vector<Configuration> seed_grid(const Domain& domain, const TorusSeedSpec& spec_in)
{
    const TorusSeedSpec spec = resolve_spec(domain, spec_in);
    std::vector<Configuration> out;
    if (spec.kind == SeedKind::annular) {
        for_each_grid_point(spec.n, spec.angles,
                            [&](std::span<const Point> z) { out.push_back(annular_seed(domain, spec, z)); });
        return out;
    }
    if (spec.n == 2) {
        const Configuration base = concentric_seed(domain, spec, {});
        const Point c = domain.center();
        for (int k = 0; k < spec.angles; ++k) {
            const Point rot = grid_angle(k, spec.angles);
            Configuration r = base;
            for (auto& p : r.points) {
                p = c + rot * (p - c);
            }
            out.push_back(r);
        }
        return out;
    }
    if (spec.n < 2) {
        throw SpecError("concentric seeds need N >= 2");
    }
    for_each_grid_point(spec.n - 2, spec.angles,
                        [&](std::span<const Point> z) { out.push_back(concentric_seed(domain, spec, z)); });
    return out;
}

bool spoke_membership(const Configuration& c, double tol)
{
    const std::size_t n = c.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (c[j] == Point{}) {
            throw SingularityError("spoke direction undefined for a vortex at the origin");
        }
        const Point spoke = std::polar(1.0, 2.0 * kPi * static_cast<double>(j + 1) / static_cast<double>(n));
        if (std::abs(std::arg(c[j] / spoke)) > tol) {
            return false;
        }
    }
    return true;
}

std::vector<Point> line_intersection_residual(const Configuration& c, std::span<const double> s)
{
    const std::size_t n = c.size();
    if (n < 3 || s.size() != n - 2) {
        throw std::invalid_argument("line residual needs N >= 3 and N - 2 weights");
    }
    std::vector<Point> h(n - 2);
    for (std::size_t j = 0; j + 2 < n; ++j) {
        h[j] = s[j] * (c[j] - c[j + 1]) + (1.0 - s[j]) * (c[j + 2] - c[j + 1]);
    }
    return h;
}

LineMembership line_membership(const Configuration& c, double tol)
{
    const std::size_t n = c.size();
    if (n < 3) {
        throw std::invalid_argument("line membership needs N >= 3");
    }
    LineMembership out;
    out.s.resize(n - 2);
    for (std::size_t j = 0; j + 2 < n; ++j) {
        const Point a = c[j] - c[j + 1];
        const Point b = c[j + 2] - c[j + 1];
        const Point d = a - b;
        // |b + s (a - b)| is minimal at s = -<b, d> / |d|^2, clamped to [0, 1].
        const double s = std::norm(d) > 0.0 ? std::clamp(-dot(b, d) / std::norm(d), 0.0, 1.0) : 0.5;
        out.s[j] = s;
        out.residual = std::max(out.residual, std::abs(b + s * d));
    }
    out.member = out.residual <= tol;
    return out;
}

std::vector<std::vector<double>> h0_matrix(std::size_t n)
{
    if (n < 3) {
        throw std::invalid_argument("h0 matrix needs N >= 3");
    }
    const std::size_t m = n - 2;
    std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
    for (std::size_t r = 0; r < m; ++r) {
        const double j = static_cast<double>(r + 1);
        if (r > 0) {
            a[r][r - 1] = 0.5 * (j - 1.0);
        }
        a[r][r] = -j;
        if (r + 1 < m) {
            a[r][r + 1] = 0.5 * (j + 1.0);
        }
    }
    return a;
}

double jacobian_determinant_h0(std::size_t n, double rho)
{
    const auto rows = h0_matrix(n);
    const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd a(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) {
            a(r, c) = rows[r][c];
        }
    }
    const double det = std::abs(a.partialPivLu().determinant());
    if (det == 0.0) {
        throw std::logic_error("h0 Jacobian is singular");
    }
    return std::pow(2.0, static_cast<double>(n - 2)) * std::pow(rho, 2.0 * static_cast<double>(n) - 4.0) * det;
}

}  // namespace vortex
