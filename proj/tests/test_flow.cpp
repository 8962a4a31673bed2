#include "vortex/errors.hpp"
#include "vortex/flow.hpp"
#include "vortex/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace vortex;

TEST_CASE("flow parameters are validated")
{
    FlowParams p;
    CHECK_NOTHROW(p.check());
    p.dt_min = 1e-2;
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
    p = FlowParams{};
    p.grad_tol = 0;
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
}

TEST_CASE("single vortex flows to the disk center")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> one{1.0};
    FlowParams p;
    p.grad_tol = 3e-9;  // |grad h| = |x| / pi near the center
    const FlowTrace t = gradient_flow(g, one, {{{0.5, 0}}}, p);
    CHECK(t.termination == Termination::converged);
    CHECK(std::abs(t.configs.back()[0]) < 1e-8);
    for (std::size_t k = 1; k < t.size(); ++k) {
        CHECK(t.times[k] > t.times[k - 1]);
        CHECK(t.energies[k] >= t.energies[k - 1] - 1e-12);
    }
    CHECK(flow_limit_monitor(t).violations == 0);
}

TEST_CASE("same-sign pair collides under the ascending flow")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> pair{1.0, 1.0};
    FlowParams p;
    const FlowTrace t = gradient_flow(g, pair, {{{0.01, 0}, {-0.01, 0.005}}}, p);
    CHECK(t.termination == Termination::interior_blowup);
    for (std::size_t k = 1; k < t.size(); ++k) {
        CHECK(t.energies[k] >= t.energies[k - 1] - 1e-12);
    }
    CHECK_THROWS_AS(gradient_flow(g, pair, {{{0.01, 0}, {0.01, 0}}}, p), ConfigurationError);
}

TEST_CASE("energy cap stops the flow")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> gamma{1.0, -2.0};
    FlowParams p;
    p.energy_cap = -1e9;  // any start exceeds the cap
    const FlowTrace t = gradient_flow(g, gamma, {{{0.2, 0}, {-0.3, 0.1}}}, p);
    CHECK(t.termination == Termination::energy_cap_hit);
}

TEST_CASE("critical point of a single vortex is a maximum")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> one{1.0};
    const CriticalPointReport r = find_critical_point(g, one, {{{0.3, 0.2}}}, FlowParams{});
    CHECK(std::abs(r.config[0]) < 1e-8);
    CHECK(r.grad_norm < 1e-8);
    CHECK(r.morse_index == 0);
    CHECK(r.hessian_eigenvalues[0] == doctest::Approx(-1 / kPi).epsilon(1e-6));
    CHECK(r.hessian_eigenvalues[1] == doctest::Approx(-1 / kPi).epsilon(1e-6));
}

TEST_CASE("critical point of (1, -2) in the disk")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> gamma{1.0, -2.0};
    const CriticalPointReport r = find_critical_point(g, gamma, {{{0, 0}, {0.3, 0}}}, FlowParams{});
    CHECK(r.grad_norm < 1e-8);
    CHECK(r.energy == doctest::Approx(-0.27907903790416411).epsilon(1e-9));
    // Cold re-evaluation.
    CHECK(energy_gradient(g, gamma, r.config).norm() < 1e-8);
    const HessianResult h = hessian(g, gamma, r.config);
    CHECK((h.eigenvalues - r.hessian_eigenvalues).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(flow_limit_monitor(r.trace).violations == 0);
}

TEST_CASE("non-converging flow reports its termination")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> pair{1.0, 1.0};
    try {
        find_critical_point(g, pair, {{{0.01, 0}, {-0.01, 0.005}}}, FlowParams{});
        FAIL("expected FlowTerminationError");
    } catch (const FlowTerminationError& e) {
        CHECK(e.reason() == Termination::interior_blowup);
        CHECK(e.last().size() == 2);
    }
}

TEST_CASE("M_delta scan")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> gamma{1.0, -2.0};
    const MDeltaScan a = m_delta_scan(g, gamma, 0.01, 4000, 3);
    CHECK(a.samples == 4000);
    CHECK(a.min_grad_norm > 1.0);
    CHECK(min_separation(g.domain(), a.argmin).min() <= 0.01);
    const MDeltaScan b = m_delta_scan(g, gamma, 0.005, 4000, 3);
    CHECK(b.min_grad_norm >= a.min_grad_norm);
    // Thread count does not change the result.
    const MDeltaScan c = m_delta_scan(g, gamma, 0.01, 4000, 3, 1);
    CHECK(c.min_grad_norm == a.min_grad_norm);
    CHECK(c.argmin == a.argmin);
    CHECK_THROWS(m_delta_scan(g, gamma, 0.0, 10, 1));
}

TEST_CASE("single vortex dynamics moves on a circle")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> one{1.0};
    const Trajectory t = integrate_dynamics(g, one, {{{0.5, 0}}}, 10.0);
    CHECK_FALSE(t.halted);
    CHECK(t.times.back() == doctest::Approx(10.0));
    double drift = 0.0, travelled = 0.0;
    for (const Configuration& c : t.configs) {
        drift = std::max(drift, std::abs(std::abs(c[0]) - 0.5));
        travelled = std::max(travelled, std::abs(c[0] - Point(0.5, 0)));
    }
    CHECK(drift < 1e-8);
    CHECK(travelled > 0.1);
    CHECK(t.max_drift < 1e-6);
}

TEST_CASE("critical point is stationary under the dynamics")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> gamma{1.0, -2.0};
    const CriticalPointReport r = find_critical_point(g, gamma, {{{0, 0}, {0.3, 0}}}, FlowParams{});
    const Trajectory t = integrate_dynamics(g, gamma, r.config, 10.0);
    double moved = 0.0;
    for (const Configuration& c : t.configs) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            moved = std::max(moved, std::abs(c[i] - r.config[i]));
        }
    }
    CHECK(moved < 1e-8);
}

TEST_CASE("dynamics halts on a near collision")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> gamma{1.0, 1.0};
    const Trajectory t = integrate_dynamics(g, gamma, {{{0.1, 0}, {0.1 + 1e-6, 0}}}, 1.0, 1e-10, 1e-5);
    CHECK(t.halted);
    CHECK_FALSE(t.reason.empty());
}

TEST_CASE("flow limit monitor")
{
    CHECK(flow_limit_monitor(FlowTrace{}).pairs_checked == 0);
    // A jump that no gradient flow with this energy budget can make.
    FlowTrace t;
    t.times = {0.0, 1e-6, 2e-6};
    t.configs = {{{{0.0, 0}}}, {{{0.5, 0}}}, {{{0.5, 0}}}};
    t.energies = {-1.0, -0.5, 0.0};
    t.grad_norms = {1.0, 1.0, 0.0};
    t.termination = Termination::converged;
    const FlowLimitDiagnosis d = flow_limit_monitor(t);
    CHECK(d.pairs_checked > 0);
    CHECK(d.violations > 0);
    CHECK(d.worst_ratio > 1.0);
}
