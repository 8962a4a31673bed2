#pragma once

// Ascending gradient flow z' = +grad H with collision monitors, Newton
// refinement of critical points, the M_delta gradient scan, and the
// Hamiltonian vortex dynamics  G_i z_i' = -i grad_i H.

#include "vortex/errors.hpp"
#include "vortex/hamiltonian.hpp"

#include <cstdint>
#include <limits>
#include <string>

namespace vortex {

struct FlowParams {
    double dt_init = 1e-3;
    double dt_min = 1e-12;
    double dt_max = 1.0;
    double grad_tol = 1e-8;
    double max_time = 1e5;
    double collision_delta = 1e-4;
    double energy_cap = std::numeric_limits<double>::infinity();
    double tol = 1e-9;               ///< local error tolerance of the embedded pair
    std::size_t max_steps = 200000;  ///< accepted plus rejected steps

    /// Throws std::invalid_argument unless 0 < dt_min <= dt_init <= dt_max and grad_tol > 0.
    void check() const;
};

enum class Termination { converged, boundary_blowup, interior_blowup, energy_cap_hit, budget_exhausted };

std::string to_string(Termination t);

struct FlowTrace {
    std::vector<double> times;
    std::vector<Configuration> configs;
    std::vector<double> energies;
    std::vector<double> grad_norms;
    Termination termination = Termination::budget_exhausted;

    std::size_t size() const { return times.size(); }
};

/// Flow stopped for a reason other than convergence.
class FlowTerminationError : public ConvergenceError {
public:
    FlowTerminationError(const std::string& what, Termination reason, Configuration last)
        : ConvergenceError(what), reason_(reason), last_(std::move(last)) {}
    Termination reason() const noexcept { return reason_; }
    const Configuration& last() const noexcept { return last_; }

private:
    Termination reason_;
    Configuration last_;
};

FlowTrace gradient_flow(const Greens& greens, std::span<const double> gamma, const Configuration& z0,
                        const FlowParams& params);

struct CriticalPointReport {
    Configuration config;
    double energy = 0.0;
    double grad_norm = 0.0;
    Eigen::VectorXd hessian_eigenvalues;  ///< ascending
    int morse_index = 0;                  ///< eigenvalues above 1e-6 * max(1, max |lambda|)
    int newton_iterations = 0;
    FlowTrace trace;
};

/// Flow to max(grad_tol, 1e-4), then Newton with the finite-difference Hessian
/// (pseudo-inverse, eigenvalue cutoff max(1e-10, 1e-8 max|lambda|)) and backtracking on |grad H|.
/// FlowTerminationError if the flow does not converge, RefinementError if Newton fails.
CriticalPointReport find_critical_point(const Greens& greens, std::span<const double> gamma,
                                        const Configuration& z0, const FlowParams& params);

struct MDeltaScan {
    double min_grad_norm = std::numeric_limits<double>::infinity();
    Configuration argmin;
    std::size_t samples = 0;
};

/// Samples configurations in M_delta: with probability 1/2 one pair is placed within delta,
/// otherwise one vortex within delta of the boundary; the rest are uniform.
MDeltaScan m_delta_scan(const Greens& greens, std::span<const double> gamma, double delta,
                        std::size_t sample_count, std::uint64_t seed = 1, unsigned threads = 0);

struct Trajectory {
    std::vector<double> times;
    std::vector<Configuration> configs;
    std::vector<double> energies;
    std::vector<double> grad_norms;
    double max_drift = 0.0;  ///< max |H(t) - H(0)| / (|H(0)| + 1)
    bool halted = false;     ///< stopped early on a separation breach
    std::string reason;
};

/// Adaptive Dormand-Prince integration of the vortex equations up to time T.
/// tol bounds the local error per unit step. Stops early when the configuration's
/// minimum separation drops to collision_delta.
Trajectory integrate_dynamics(const Greens& greens, std::span<const double> gamma, const Configuration& z0,
                              double T, double tol = 1e-10, double collision_delta = 1e-6);

struct FlowLimitDiagnosis {
    std::size_t pairs_checked = 0;
    std::size_t violations = 0;
    double worst_ratio = 0.0;  ///< max |z^t - z^s| / (sqrt(t - s) sqrt(c0 - H(z^s)))
    double c0 = 0.0;
};

/// Checks |z^t - z^s| <= sqrt(t - s) sqrt(c0 - H(z^s)) for s < t on the trace with c0 the
/// final energy (relative slack 1e-6). Long traces are thinned to 1500 records.
FlowLimitDiagnosis flow_limit_monitor(const FlowTrace& trace);

}  // namespace vortex
