#include "vortex/flow.hpp"

#include "vortex/admissibility.hpp"
#include "vortex/ode.hpp"
#include "vortex/parallel.hpp"
#include "vortex/random.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace vortex {

namespace {

constexpr double kEnergySlack = 1e-13;
constexpr std::size_t kScanChunk = 256;
constexpr std::size_t kMonitorRecords = 1500;

Termination classify_collision(const Domain& domain, const Configuration& c, double delta)
{
    const std::size_t n = c.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = boundary_distance(domain, c[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(c[i] - c[j]) <= delta) {
                if (d[i] > 2.0 * delta && d[j] > 2.0 * delta) {
                    return Termination::interior_blowup;
                }
            }
        }
    }
    return Termination::boundary_blowup;
}

}  // namespace

void FlowParams::check() const
{
    if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max)) {
        throw std::invalid_argument("flow parameters need 0 < dt_min <= dt_init <= dt_max");
    }
    if (!(grad_tol > 0.0)) {
        throw std::invalid_argument("grad_tol must be positive");
    }
    if (!(tol > 0.0) || !(max_time > 0.0) || !(collision_delta > 0.0)) {
        throw std::invalid_argument("tol, max_time and collision_delta must be positive");
    }
}

std::string to_string(Termination t)
{
    switch (t) {
    case Termination::converged:
        return "converged";
    case Termination::boundary_blowup:
        return "boundary_blowup";
    case Termination::interior_blowup:
        return "interior_blowup";
    case Termination::energy_cap_hit:
        return "energy_cap_hit";
    case Termination::budget_exhausted:
        return "budget_exhausted";
    }
    return "budget_exhausted";
}

// ---------------------------------------------------------------------------

FlowTrace gradient_flow(const Greens& greens, std::span<const double> gamma, const Configuration& z0,
                        const FlowParams& params)
{
    params.check();
    const Domain& domain = greens.domain();
    EnergyEval ev = energy_and_gradient(greens, gamma, z0);

    FlowTrace trace;
    auto record = [&](double t, const Configuration& c, const EnergyEval& e) {
        trace.times.push_back(t);
        trace.configs.push_back(c);
        trace.energies.push_back(e.value);
        trace.grad_norms.push_back(e.grad.norm());
    };
    record(0.0, z0, ev);

    auto stop_reason = [&](const Configuration& c, const EnergyEval& e) -> std::optional<Termination> {
        if (e.grad.norm() < params.grad_tol) {
            return Termination::converged;
        }
        const Separation sep = min_separation(domain, c);
        if (sep.min() <= params.collision_delta) {
            return classify_collision(domain, c, params.collision_delta);
        }
        if (e.value >= params.energy_cap) {
            return Termination::energy_cap_hit;
        }
        return std::nullopt;
    };
    if (auto r = stop_reason(z0, ev)) {
        trace.termination = *r;
        return trace;
    }

    double last_energy = 0.0;
    Eigen::VectorXd last_grad;
    auto rhs = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        EnergyEval e = energy_and_gradient(greens, gamma, from_vector(y));
        last_energy = e.value;
        last_grad = e.grad;
        return e.grad;
    };

    Eigen::VectorXd y = to_vector(z0);
    double t = 0.0;
    double dt = params.dt_init;
    for (std::size_t step = 0; step < params.max_steps; ++step) {
        if (t >= params.max_time) {
            break;
        }
        const double h = std::min(dt, params.max_time - t);
        Dp5Step s;
        try {
            s = dp5_step(rhs, y, ev.grad, h);
        } catch (const Error&) {
            dt = 0.5 * h;
            if (dt < params.dt_min) {
                break;
            }
            continue;
        }
        const double err = dp5_error_norm(s.error, y, s.y, params.tol, params.tol);
        if (err > 1.0 || last_energy < ev.value - kEnergySlack) {
            dt = err > 1.0 ? h * std::max(0.2, dp5_factor(err)) : 0.5 * h;
            if (dt < params.dt_min) {
                break;
            }
            continue;
        }
        t += h;
        y = s.y;
        ev.value = last_energy;
        ev.grad = last_grad;
        const Configuration c = from_vector(y);
        record(t, c, ev);
        dt = std::min(params.dt_max, h * dp5_factor(err));
        if (auto r = stop_reason(c, ev)) {
            trace.termination = *r;
            return trace;
        }
    }
    trace.termination = Termination::budget_exhausted;
    return trace;
}

// ---------------------------------------------------------------------------

CriticalPointReport find_critical_point(const Greens& greens, std::span<const double> gamma,
                                        const Configuration& z0, const FlowParams& params)
{
    FlowParams coarse = params;
    coarse.grad_tol = std::max(params.grad_tol, 1e-4);
    CriticalPointReport rep;
    rep.trace = gradient_flow(greens, gamma, z0, coarse);
    if (rep.trace.termination != Termination::converged) {
        throw FlowTerminationError("gradient flow stopped: " + to_string(rep.trace.termination),
                                   rep.trace.termination, rep.trace.configs.back());
    }

    Configuration z = rep.trace.configs.back();
    EnergyEval ev = energy_and_gradient(greens, gamma, z);
    double gnorm = ev.grad.norm();
    for (int it = 0; it < 50 && gnorm >= 1e-3 * params.grad_tol; ++it) {
        HessianResult hr;
        try {
            hr = hessian(greens, gamma, z);
        } catch (const ConditioningError& e) {
            throw RefinementError(std::string("Newton refinement: ") + e.what(), z.points);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hr.matrix);
        const Eigen::VectorXd& lam = solver.eigenvalues();
        const Eigen::MatrixXd& vec = solver.eigenvectors();
        const double cutoff = std::max(1e-10, 1e-8 * lam.cwiseAbs().maxCoeff());
        Eigen::VectorXd step = Eigen::VectorXd::Zero(ev.grad.size());
        for (Eigen::Index k = 0; k < lam.size(); ++k) {
            if (std::abs(lam[k]) > cutoff) {
                step -= (vec.col(k).dot(ev.grad) / lam[k]) * vec.col(k);
            }
        }
        const Eigen::VectorXd y = to_vector(z);
        bool accepted = false;
        double scale = 1.0;
        for (int bt = 0; bt < 30 && !accepted; ++bt, scale *= 0.5) {
            const Configuration trial = from_vector(y + scale * step);
            if (!is_valid(greens.domain(), trial)) {
                continue;
            }
            const EnergyEval te = energy_and_gradient(greens, gamma, trial);
            if (te.grad.norm() < gnorm) {
                z = trial;
                ev = te;
                gnorm = te.grad.norm();
                accepted = true;
            }
        }
        ++rep.newton_iterations;
        if (!accepted) {
            break;
        }
    }
    if (!(gnorm < params.grad_tol)) {
        throw RefinementError("Newton refinement did not reach grad_tol", z.points);
    }
    if (!(min_separation(greens.domain(), z).min() > params.collision_delta)) {
        throw RefinementError("refined point violates the separation margin", z.points);
    }
    rep.config = z;
    rep.energy = ev.value;
    rep.grad_norm = gnorm;
    const HessianResult hr = hessian(greens, gamma, z);
    rep.hessian_eigenvalues = hr.eigenvalues;
    const double eig_tol = 1e-6 * std::max(1.0, hr.eigenvalues.cwiseAbs().maxCoeff());
    rep.morse_index = static_cast<int>((hr.eigenvalues.array() > eig_tol).count());
    return rep;
}

// ---------------------------------------------------------------------------

MDeltaScan m_delta_scan(const Greens& greens, std::span<const double> gamma, double delta,
                        std::size_t sample_count, std::uint64_t seed, unsigned threads)
{
    if (!(delta > 0.0)) {
        throw std::invalid_argument("delta must be positive");
    }
    check_vorticity(gamma);
    const Domain& domain = greens.domain();
    const std::size_t n = gamma.size();
    const std::size_t chunks = (sample_count + kScanChunk - 1) / kScanChunk;
    std::vector<MDeltaScan> parts(chunks);
    parallel_for(chunks, threads, [&](std::size_t ci) {
        Rng rng(derive_seed(seed, ci));
        const std::size_t end = std::min(sample_count, (ci + 1) * kScanChunk);
        MDeltaScan& part = parts[ci];
        for (std::size_t k = ci * kScanChunk; k < end; ++k) {
            for (int attempt = 0; attempt < 1000; ++attempt) {
                Configuration c;
                c.points.resize(n);
                std::vector<bool> placed(n, false);
                if (n >= 2 && rng.uniform() < 0.5) {
                    const std::size_t i = rng.index(n);
                    std::size_t j = rng.index(n - 1);
                    j += (j >= i) ? 1 : 0;
                    c[i] = sample_point(domain, rng);
                    c[j] = sample_near(domain, rng, c[i], delta);
                    placed[i] = placed[j] = true;
                } else {
                    const std::size_t j = rng.index(n);
                    const double d = delta * (1.0 - rng.uniform());
                    if (d >= domain.collar_width()) {
                        throw SamplingError("delta exceeds the collar width");
                    }
                    c[j] = sample_at_distance(domain, rng, d);
                    placed[j] = true;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    if (!placed[i]) {
                        c[i] = sample_point(domain, rng);
                    }
                }
                if (!is_valid(domain, c)) {
                    continue;
                }
                const double g = energy_gradient(greens, gamma, c).norm();
                if (g < part.min_grad_norm) {
                    part.min_grad_norm = g;
                    part.argmin = c;
                }
                ++part.samples;
                break;
            }
        }
    });
    MDeltaScan out;
    for (const auto& p : parts) {
        if (p.min_grad_norm < out.min_grad_norm) {
            out.min_grad_norm = p.min_grad_norm;
            out.argmin = p.argmin;
        }
        out.samples += p.samples;
    }
    if (out.samples == 0 && sample_count > 0) {
        throw SamplingError("no configuration in M_delta could be placed");
    }
    return out;
}

// ---------------------------------------------------------------------------

Trajectory integrate_dynamics(const Greens& greens, std::span<const double> gamma, const Configuration& z0,
                              double T, double tol, double collision_delta)
{
    if (!(T > 0.0) || !(tol > 0.0)) {
        throw std::invalid_argument("integration horizon and tolerance must be positive");
    }
    const Domain& domain = greens.domain();
    EnergyEval ev = energy_and_gradient(greens, gamma, z0);
    const double h0 = ev.value;

    Trajectory traj;
    auto record = [&](double t, const Configuration& c, const EnergyEval& e) {
        traj.times.push_back(t);
        traj.configs.push_back(c);
        traj.energies.push_back(e.value);
        traj.grad_norms.push_back(e.grad.norm());
        traj.max_drift = std::max(traj.max_drift, std::abs(e.value - h0) / (std::abs(h0) + 1.0));
    };
    record(0.0, z0, ev);

    auto velocity = [&](const Eigen::VectorXd& grad) {
        Eigen::VectorXd v(grad.size());
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            v[2 * i] = grad[2 * i + 1] / gamma[i];
            v[2 * i + 1] = -grad[2 * i] / gamma[i];
        }
        return v;
    };
    EnergyEval last;
    auto rhs = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        last = energy_and_gradient(greens, gamma, from_vector(y));
        return velocity(last.grad);
    };

    Eigen::VectorXd y = to_vector(z0);
    Eigen::VectorXd f = velocity(ev.grad);
    double t = 0.0;
    double dt = std::min(1e-2, T);
    while (t < T) {
        const double h = std::min(dt, T - t);
        if (h < 1e-14 * std::max(1.0, T)) {
            traj.halted = true;
            traj.reason = "step size underflow";
            break;
        }
        Dp5Step s;
        try {
            s = dp5_step(rhs, y, f, h);
        } catch (const Error&) {
            dt = 0.5 * h;
            continue;
        }
        // Error per unit step: the local error is measured against tol * h.
        const double err = dp5_error_norm(s.error, y, s.y, tol, tol) / h;
        if (err > 1.0) {
            dt = h * std::clamp(0.9 * std::pow(err, -0.25), 0.2, 1.0);
            continue;
        }
        t = (T - t <= h) ? T : t + h;
        y = s.y;
        f = s.f_end;
        ev = last;
        const Configuration c = from_vector(y);
        record(t, c, ev);
        if (min_separation(domain, c).min() <= collision_delta) {
            traj.halted = true;
            traj.reason = "collision";
            break;
        }
        dt = h * (err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.25), 0.2, 5.0) : 5.0);
    }
    return traj;
}

// ---------------------------------------------------------------------------

FlowLimitDiagnosis flow_limit_monitor(const FlowTrace& trace)
{
    FlowLimitDiagnosis out;
    const std::size_t n = trace.size();
    if (n == 0) {
        return out;
    }
    out.c0 = trace.energies.back();
    std::vector<std::size_t> idx;
    if (n <= kMonitorRecords) {
        for (std::size_t i = 0; i < n; ++i) {
            idx.push_back(i);
        }
    } else {
        for (std::size_t k = 0; k < kMonitorRecords; ++k) {
            const std::size_t i = static_cast<std::size_t>(
                std::llround(static_cast<double>(k) * static_cast<double>(n - 1) / (kMonitorRecords - 1)));
            if (idx.empty() || idx.back() != i) {
                idx.push_back(i);
            }
        }
    }
    std::vector<Eigen::VectorXd> z;
    z.reserve(idx.size());
    for (std::size_t i : idx) {
        z.push_back(to_vector(trace.configs[i]));
    }
    for (std::size_t a = 0; a < idx.size(); ++a) {
        const double slack = std::max(0.0, out.c0 - trace.energies[idx[a]]);
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const double dt = trace.times[idx[b]] - trace.times[idx[a]];
            const double lhs = (z[b] - z[a]).norm();
            const double bound = std::sqrt(dt) * std::sqrt(slack);
            ++out.pairs_checked;
            if (bound > 0.0) {
                out.worst_ratio = std::max(out.worst_ratio, lhs / bound);
            } else if (lhs > 0.0) {
                out.worst_ratio = std::numeric_limits<double>::infinity();
            }
            if (lhs > (1.0 + 1e-6) * bound + 1e-12) {
                ++out.violations;
            }
        }
    }
    return out;
}

}  // namespace vortex
