#pragma once

// Sampled numerical checks of the quantitative lemmas: boundary projection
// derivative, distance inequalities in the collar, boundary interaction
// asymptotics, the bound on line charts, and the two gradient floors.
//
// All checks are deterministic for a fixed seed and independent of the
// thread count (work is split into fixed chunks with derived seeds).

#include "vortex/greens.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vortex {

struct ProjectionCheck {
    std::size_t samples = 0;
    double max_rel_error = 0.0;  ///< |FD Dp v - (1/(1 - kappa d)) <v, tau> tau| * (1 - kappa d)
};

/// Central differences (step 1e-6) of the nearest-point projection at random collar points.
ProjectionCheck check_projection_derivative(const Domain& domain, std::size_t samples, std::uint64_t seed,
                                            unsigned threads = 0);

struct DistanceInequalities {
    std::size_t pairs = 0;
    std::size_t lower_violations = 0;  ///< d(x) + d(y) > |x - reflect(y)|
    std::size_t upper_violations = 0;  ///< |x - reflect(y)| > |x - y| + 2 d(y)
    double c6 = 0.0;                   ///< min |x - reflect(y)| / |x - y|
    double c7 = 0.0;                   ///< min |x - reflect(y)|^2 / |p(x) - p(y)|^2
    double c8 = 0.0;                   ///< max (|x - reflect(y)| - |reflect(x) - y|)^2 / ((d(x) + d(y)) |p(x) - p(y)|^2)

    bool ok() const;
};

/// Half the pairs are local (nearby boundary parameters), half independent.
DistanceInequalities check_distance_inequalities(const Domain& domain, std::size_t pairs, std::uint64_t seed,
                                                 unsigned threads = 0);

struct InteractionLevel {
    double d = 0.0;
    double max_error = 0.0;  ///< max |A - predictor|
    double max_abs = 0.0;    ///< max |A|
    double min_value = 0.0;  ///< min A
};

struct InteractionCheck {
    std::vector<InteractionLevel> levels;
    std::size_t pairs_per_level = 0;
    bool rate_ok = false;     ///< max_error shrinks by >= 1.5 between consecutive levels
    bool bound_ok = false;    ///< |A| <= 1.1 on levels with d <= 1e-2
    bool convex_ok = false;   ///< A >= -0.1 on those levels (vacuous unless strictly convex)

    bool ok() const { return rate_ok && bound_ok && convex_ok; }
};

/// Pair shapes are drawn once and rescaled by each d: y = b + d a nu, x = y + d (alpha nu + beta tau)
/// at a boundary point b, so the predictor is the same on every level.
InteractionCheck check_boundary_interaction(const Greens& greens, std::span<const double> levels,
                                            std::size_t pairs, std::uint64_t seed, unsigned threads = 0);

struct LineBoundCheck {
    std::size_t samples = 0;
    double sup_energy = 0.0;
    double min_energy = 0.0;
    std::size_t sequences = 0;
    std::size_t sequences_below = 0;  ///< sequences that reached an energy below min_energy
    std::vector<double> sequence_energy;

    bool ok() const;
};

/// Line charts anchored on the boundary, (a + t_1 v, .., a + t_N v) with the t uniform on the chord,
/// then approach sequences towards the boundary of the chart (collapse onto either chord end, closing
/// the gap of the most strongly attracting neighbours, moving the last vortex onto the boundary).
LineBoundCheck check_line_bound(const Greens& greens, std::span<const double> gamma, std::size_t samples,
                                std::size_t sequences, std::uint64_t seed, unsigned threads = 0);

struct FloorCheck {
    double threshold = 0.0;       ///< delta-hat found on the calibration samples (0 if none)
    double constant = 0.0;        ///< C_Gamma resp. eps_C
    std::size_t verified = 0;     ///< fresh samples below the threshold
    std::size_t violations = 0;
    double worst_margin = 0.0;    ///< min over verified samples of (observed - bound)

    bool ok() const { return threshold > 0.0 && violations == 0; }
};

/// |grad H| >= (C_Gamma / 4 pi) / r for a cluster of radius r contracted toward an interior point.
/// Calibration on the radii 10^{-1}, 10^{-1.5}, .., 10^{-6}; verification on log-uniform radii
/// below the threshold. Requires a Delta-admissible gamma with N >= 2.
FloorCheck check_interior_collision(const Greens& greens, std::span<const double> gamma, std::size_t samples,
                                    std::uint64_t seed, unsigned threads = 0);

/// Boundary pairing >= eps_C - 0.1 for the whole configuration pushed into the collar near one
/// boundary point, boundary distances d c_j with c_j in [0.2, 1]. Calibration on d = 10^{-2}..10^{-6}.
FloorCheck check_boundary_pairing(const Greens& greens, std::span<const double> gamma, std::size_t samples,
                                  std::uint64_t seed, unsigned threads = 0);

struct SpokeBound {
    std::size_t samples = 0;
    double sup_energy = 0.0;
};

/// Energy on random configurations of the spoke set (z_j on the ray through exp(2 pi i j / N),
/// radius uniform across the annulus). Annulus only.
SpokeBound check_spoke_bound(const Greens& greens, std::span<const double> gamma, std::size_t samples,
                             std::uint64_t seed);

}  // namespace vortex
