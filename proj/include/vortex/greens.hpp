#pragma once

// Green's function G, regular part g and Robin function h for the supported
// domain models, with analytic gradients.
//
//   G(x, y) = g(x, y) - (1/2pi) ln|x - y|,   h(x) = g(x, x)
//
// Disk: Dirichlet Green's function. Conformal image: pulled back to the disk.
// Annulus: Dirichlet part from the product (image) series plus the
// hydrodynamic correction fixed by the boundary periods.

#include "vortex/geometry.hpp"

#include <cstdint>
#include <vector>

namespace vortex {

struct GreensEval {
    double value = 0.0;
    Point grad_x;
    Point grad_y;
};

struct RegularEval {
    double g = 0.0;
    Point grad_x;
    Point grad_y;
};

struct RobinEval {
    double h = 0.0;
    Point grad_h;
};

/// Boundary circulations gamma_0 (outer) .. gamma_k0 (holes); entries sum to -1.
struct PeriodVector {
    std::vector<double> gamma;

    /// Uniform default -1/(k0+1) for k0 holes.
    static PeriodVector uniform(int holes);
    /// Throws DomainError unless the entries sum to -1 (tolerance 1e-12).
    void check(int holes) const;
};

/// A point prepared for repeated kernel evaluation (preimage cached for conformal images).
struct Site {
    Point z;
    Point w;        ///< preimage in the unit disk (equals z for disk and annulus)
    Point dw_conj;  ///< conj(dw/dz), maps w-gradients to z-gradients
};

class Greens {
public:
    explicit Greens(Domain domain);
    Greens(Domain domain, PeriodVector periods);

    const Domain& domain() const { return domain_; }
    const PeriodVector& periods() const { return periods_; }

    /// Prepares z. Throws DomainError when z is not strictly inside.
    Site site(Point z) const;
    /// Boundary point as a site (kernel evaluation on the closure, used by audits).
    Site boundary_site(const BoundaryPoint& b) const;

    /// G and both gradients. SingularityError for x == y, DomainError outside.
    GreensEval green(Point x, Point y) const;
    GreensEval green(const Site& x, const Site& y) const;

    /// g with gradients; x == y allowed (closed form, no cancellation).
    RegularEval regular_part(Point x, Point y) const;
    RegularEval regular_part(const Site& x, const Site& y) const;

    RobinEval robin(Point x) const;
    RobinEval robin(const Site& x) const;

private:
    /// (G, grad wrt first argument)
    std::pair<double, Point> green_first(const Site& x, const Site& y) const;
    std::pair<double, Point> regular_first(const Site& x, const Site& y) const;

    Domain domain_;
    PeriodVector periods_;
    // Annulus hydrodynamic correction a + b (u(x) + u(y)) + c u(x) u(y), u = inner harmonic measure.
    double corr_a_ = 0.0;
    double corr_b_ = 0.0;
    double corr_c_ = 0.0;
};

/// Harmonic measure of the inner circle of an annulus: ln|z| / ln r_in.
double inner_harmonic_measure(const Domain& annulus, Point z);

/// The part of G added to the Dirichlet Green's function so that G has the
/// prescribed periods. UnsupportedError for non-annulus domains.
double hydrodynamic_correction(const Domain& domain, const PeriodVector& periods, Point x, Point y);

/// Flux of grad_x G(., y) through the circle |x| = radius, measured with the
/// normal pointing towards the origin (outward from the annulus on the inner
/// boundary). Trapezoid rule with the given number of nodes.
double circle_flux(const Greens& greens, Point y, double radius, int nodes = 2048);

// ---------------------------------------------------------------------------
// Hypothesis audit
// ---------------------------------------------------------------------------

struct HypothesisAuditReport {
    double c0_hat = 0.0;  ///< inf G
    double c1_hat = 0.0;  ///< sup g
    double c2_hat = 0.0;  ///< sup |G| + |grad G| at separation >= eps
    double c3_hat = 0.0;  ///< sup |psi| + |grad psi| on collar pairs
    double c4_hat = 0.0;  ///< -inf of G(w+rv, w+sv) - G(w+rv, w+tv) on sampled lines
    double boundary_residual = 0.0;
    double symmetry_residual = 0.0;
    double laplacian_residual = 0.0;
    std::size_t samples = 0;
};

/// psi(x, y) = g(x, y) - (1/2pi) ln|reflect(x) - y| with gradients (x in the collar).
RegularEval reflection_remainder(const Greens& greens, Point x, Point y);

/// Sampled estimates of the constants C0..C4 and residual checks.
/// Boundary residual: |G| on the boundary for Dirichlet models, |<grad_x G, tau>| for the
/// annulus (constant boundary values). Requires sample_count >= 1000.
HypothesisAuditReport hypothesis_audit(const Greens& greens, std::size_t sample_count, double eps,
                                       std::uint64_t seed = 1, unsigned threads = 0);

}  // namespace vortex
