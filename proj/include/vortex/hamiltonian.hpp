#pragma once

// Kirchhoff-Routh path function
//   H(z) = sum_j G_j^2 h(z_j) + sum_{i != j} G_i G_j G(z_i, z_j)
// with its analytic gradient, a finite-difference Hessian, and the
// collision / boundary functionals used to bound |grad H| from below.
//
// Gradients are real 2N-vectors laid out (x_1, y_1, ..., x_N, y_N).

#include "vortex/greens.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace vortex {

Eigen::VectorXd to_vector(const Configuration& c);
Configuration from_vector(const Eigen::VectorXd& v);
/// Slot i of a 2N-vector as a complex number.
inline Point slot(const Eigen::VectorXd& v, std::size_t i) { return {v[2 * i], v[2 * i + 1]}; }

struct EnergyEval {
    double value = 0.0;
    Eigen::VectorXd grad;
};

/// ConfigurationError for invalid c or gamma (wrong size, zero entries).
double energy(const Greens& greens, std::span<const double> gamma, const Configuration& c);
Eigen::VectorXd energy_gradient(const Greens& greens, std::span<const double> gamma, const Configuration& c);
EnergyEval energy_and_gradient(const Greens& greens, std::span<const double> gamma, const Configuration& c);

// ---------------------------------------------------------------------------

/// Partition of {0..N-1}; clusters are the blocks with at least two elements.
struct ClusterPartition {
    std::vector<std::vector<int>> blocks;

    /// Throws std::invalid_argument unless blocks partition {0..n-1}.
    void check(std::size_t n) const;
    std::vector<std::vector<int>> clusters() const;
};

struct ClusterEnergy {
    std::vector<double> per_cluster;  ///< J_C, aligned with partition.clusters()
    double total = 0.0;               ///< J_P
    Eigen::VectorXd grad;             ///< grad J_P
};

/// J_C = sum_{i != j in C} G_i G_j ln|z_i - z_j|. SingularityError on coincident points in a cluster.
ClusterEnergy cluster_log_energy(std::span<const double> gamma, const Configuration& c, const ClusterPartition& p);

struct CollisionWeight {
    double value = 0.0;
    bool delta_admissible = true;
};

/// C_Gamma by enumeration of set partitions (N <= 12, else CapacityError).
CollisionWeight collision_weight_constant(std::span<const double> gamma);

struct BoundaryInteraction {
    double exact = 0.0;      ///< A(x, y) from analytic gradients
    double predictor = 0.0;  ///< (a + 2d_y)^2/((a + 2d_y)^2 + b^2) - a^2/(a^2 + b^2)
};

/// A(x, y) = 2 pi (<grad_x G, d_x nu_x> + <grad_y G, d_y nu_y>). CollarError (index 0 or 1).
BoundaryInteraction boundary_interaction(const Greens& greens, Point x, Point y);

/// <grad H, grad Phi_C> = 2 pi sum_{j in C} <grad_j H, d(z_j) nu(z_j)>. CollarError carries the slot.
double boundary_pairing(const Greens& greens, std::span<const double> gamma, const Configuration& c,
                        const std::vector<int>& cluster);

/// eps_C = (sum G_i^2 - sum_{i != j} |G_i G_j|) / 2, opposite-sign pairs only when strictly convex.
double boundary_weight_constant(std::span<const double> gamma, const std::vector<int>& cluster,
                                bool strictly_convex);

struct HessianResult {
    Eigen::MatrixXd matrix;       ///< symmetrized
    double asymmetry = 0.0;       ///< max |K - K^T| before symmetrization
    Eigen::VectorXd eigenvalues;  ///< ascending
};

/// Fourth-order central differences of the analytic gradient, step 1e-5 * max(1, |coordinate|).
/// ConditioningError when the step is not small against the configuration's separation.
HessianResult hessian(const Greens& greens, std::span<const double> gamma, const Configuration& c);

}  // namespace vortex
