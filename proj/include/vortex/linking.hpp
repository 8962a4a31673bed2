#pragma once

// Seed families for the linking arguments: concentric torus maps for simply
// connected domains, nested circles around the hole of the annulus, the
// spoke set S, line-membership residuals and the h_0 Jacobian certificate.

#include "vortex/geometry.hpp"

#include <span>
#include <vector>

namespace vortex {

enum class SeedKind { concentric, annular };

struct TorusSeedSpec {
    SeedKind kind = SeedKind::concentric;
    std::size_t n = 3;
    double rho = 0.0;            ///< concentric radius unit; 0 selects dist(center, boundary) / (N + 1)
    std::vector<double> levels;  ///< annular circle radii; empty selects r_in + j (1 - r_in) / (N + 1)
    int angles = 8;              ///< grid resolution per torus dimension
};

/// Fills in the defaults of spec for this domain.
TorusSeedSpec resolve_spec(const Domain& domain, TorusSeedSpec spec);

/// Slot 1 = c, slot N = c + (N-1) rho, slot j = c + (j-1) rho zeta_{j-1} with c = domain.center().
/// zeta has N-2 unit complex entries. DomainError unless the closed ball of radius N rho lies inside.
Configuration concentric_seed(const Domain& domain, const TorusSeedSpec& spec, std::span<const Point> zeta);

/// Slot j on the circle of radius levels[j] at the angle of zeta_j (N entries). SpecError unless
/// the levels are strictly increasing inside (r_in, 1) and the domain is an annulus.
Configuration annular_seed(const Domain& domain, const TorusSeedSpec& spec, std::span<const Point> zeta);

/// Seeds on the uniform angle grid (angles^(N-2) resp. angles^N points, in lexicographic order).
/// For N = 2 the concentric torus is a point and the grid consists of its global rotations.
std::vector<Configuration> seed_grid(const Domain& domain, const TorusSeedSpec& spec);

/// True iff every z_j / |z_j| lies within tol (radians) of exp(2 pi i j / N), j 1-based.
/// SingularityError for z_j = 0.
bool spoke_membership(const Configuration& c, double tol = 1e-9);

/// h_j = s_j (z_j - z_{j+1}) + (1 - s_j)(z_{j+2} - z_{j+1}), j = 1..N-2.
std::vector<Point> line_intersection_residual(const Configuration& c, std::span<const double> s);

struct LineMembership {
    bool member = false;
    std::vector<double> s;  ///< minimizing weights in [0, 1]
    double residual = 0.0;  ///< max_j |h_j(s)|
};

/// Minimizes each |h_j| over s_j in [0, 1] (the components decouple) and compares with tol.
LineMembership line_membership(const Configuration& c, double tol = 1e-10);

/// Tridiagonal M_N with rows (1/2 (j-1), -j, 1/2 (j+1)), j = 1..N-2.
std::vector<std::vector<double>> h0_matrix(std::size_t n);

/// |det D h_0(p)| = 2^(N-2) rho^(2N-4) |det M_N|. std::invalid_argument for N < 3,
/// std::logic_error if the determinant vanishes.
double jacobian_determinant_h0(std::size_t n, double rho);

}  // namespace vortex
