#include "vortex/hamiltonian.hpp"

#include "vortex/admissibility.hpp"
#include "vortex/combinatorics.hpp"
#include "vortex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vortex {

namespace {

constexpr std::size_t kMaxPartitionN = 12;
constexpr double kHessianStep = 1e-5;

void check_inputs(const Greens& greens, std::span<const double> gamma, const Configuration& c)
{
    if (gamma.size() != c.size()) {
        throw ConfigurationError("vorticity vector and configuration differ in length");
    }
    check_vorticity(gamma);
    validate(greens.domain(), c);
}

void add(Eigen::VectorXd& v, std::size_t i, Point p)
{
    v[2 * i] += p.real();
    v[2 * i + 1] += p.imag();
}

}  // namespace

Eigen::VectorXd to_vector(const Configuration& c)
{
    Eigen::VectorXd v(2 * c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        v[2 * i] = c[i].real();
        v[2 * i + 1] = c[i].imag();
    }
    return v;
}

Configuration from_vector(const Eigen::VectorXd& v)
{
    Configuration c;
    c.points.resize(static_cast<std::size_t>(v.size()) / 2);
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = slot(v, i);
    }
    return c;
}

EnergyEval energy_and_gradient(const Greens& greens, std::span<const double> gamma, const Configuration& c)
{
    check_inputs(greens, gamma, c);
    const std::size_t n = c.size();
    std::vector<Site> sites;
    sites.reserve(n);
    for (const Point& z : c.points) {
        sites.push_back(greens.site(z));
    }
    EnergyEval out;
    out.grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n));
    for (std::size_t j = 0; j < n; ++j) {
        const RobinEval r = greens.robin(sites[j]);
        const double w = gamma[j] * gamma[j];
        out.value += w * r.h;
        add(out.grad, j, w * r.grad_h);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const GreensEval e = greens.green(sites[i], sites[j]);
            const double w = 2.0 * gamma[i] * gamma[j];
            out.value += w * e.value;
            add(out.grad, i, w * e.grad_x);
            add(out.grad, j, w * e.grad_y);
        }
    }
    return out;
}

double energy(const Greens& greens, std::span<const double> gamma, const Configuration& c)
{
    return energy_and_gradient(greens, gamma, c).value;
}

Eigen::VectorXd energy_gradient(const Greens& greens, std::span<const double> gamma, const Configuration& c)
{
    return energy_and_gradient(greens, gamma, c).grad;
}

// ---------------------------------------------------------------------------

void ClusterPartition::check(std::size_t n) const
{
    std::vector<int> seen(n, 0);
    for (const auto& b : blocks) {
        if (b.empty()) {
            throw std::invalid_argument("partition has an empty block");
        }
        for (int i : b) {
            if (i < 0 || static_cast<std::size_t>(i) >= n || seen[i]++) {
                throw std::invalid_argument("partition blocks must be disjoint and cover {1..N}");
            }
        }
    }
    if (std::count(seen.begin(), seen.end(), 0) != 0) {
        throw std::invalid_argument("partition blocks must be disjoint and cover {1..N}");
    }
}

std::vector<std::vector<int>> ClusterPartition::clusters() const
{
    std::vector<std::vector<int>> out;
    for (const auto& b : blocks) {
        if (b.size() >= 2) {
            out.push_back(b);
        }
    }
    return out;
}

ClusterEnergy cluster_log_energy(std::span<const double> gamma, const Configuration& c, const ClusterPartition& p)
{
    if (gamma.size() != c.size()) {
        throw ConfigurationError("vorticity vector and configuration differ in length");
    }
    p.check(c.size());
    ClusterEnergy out;
    out.grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * c.size()));
    for (const auto& cl : p.clusters()) {
        double jc = 0.0;
        for (std::size_t a = 0; a < cl.size(); ++a) {
            for (std::size_t b = a + 1; b < cl.size(); ++b) {
                const int i = cl[a];
                const int j = cl[b];
                const Point d = c[i] - c[j];
                if (d == Point{}) {
                    throw SingularityError("coincident points inside a cluster");
                }
                const double w = 2.0 * gamma[i] * gamma[j];
                jc += w * std::log(std::abs(d));
                add(out.grad, i, w * d / std::norm(d));
                add(out.grad, j, -w * d / std::norm(d));
            }
        }
        out.per_cluster.push_back(jc);
        out.total += jc;
    }
    return out;
}

CollisionWeight collision_weight_constant(std::span<const double> gamma)
{
    check_vorticity(gamma);
    if (gamma.size() > kMaxPartitionN) {
        throw CapacityError("partition enumeration supports N <= 12");
    }
    if (!is_delta_admissible(gamma).ok) {
        return CollisionWeight{0.0, false};
    }
    double best = std::numeric_limits<double>::infinity();
    for_each_set_partition(gamma.size(), [&](const std::vector<std::vector<int>>& blocks) {
        for (const auto& b : blocks) {
            if (b.size() >= 2) {
                best = std::min(best, std::abs(pair_sum(gamma, b)));
            }
        }
        return true;
    });
    if (!std::isfinite(best)) {
        best = 0.0;  // N = 1: no partition has a cluster
    }
    return CollisionWeight{best, true};
}

BoundaryInteraction boundary_interaction(const Greens& greens, Point x, Point y)
{
    const BoundaryFrame fx = boundary_frame(greens.domain(), x);
    const BoundaryFrame fy = boundary_frame(greens.domain(), y);
    if (!fx.in_collar) {
        throw CollarError("boundary interaction: x is outside the collar", 0);
    }
    if (!fy.in_collar) {
        throw CollarError("boundary interaction: y is outside the collar", 1);
    }
    const GreensEval e = greens.green(x, y);
    BoundaryInteraction out;
    out.exact = 2.0 * kPi *
                (fx.dist * dot(e.grad_x, fx.inward_normal) + fy.dist * dot(e.grad_y, fy.inward_normal));
    const double alpha = dot(x - y, fy.inward_normal);
    const double beta = dot(x - y, fy.tangent);
    const double shifted = alpha + 2.0 * fy.dist;
    const double b2 = beta * beta;
    auto frac = [b2](double t) { return t * t + b2 > 0.0 ? t * t / (t * t + b2) : 0.0; };
    out.predictor = frac(shifted) - frac(alpha);
    return out;
}

double boundary_pairing(const Greens& greens, std::span<const double> gamma, const Configuration& c,
                        const std::vector<int>& cluster)
{
    if (cluster.empty()) {
        return 0.0;
    }
    std::vector<BoundaryFrame> frames;
    for (int j : cluster) {
        if (j < 0 || static_cast<std::size_t>(j) >= c.size()) {
            throw std::invalid_argument("cluster index out of range");
        }
        BoundaryFrame fr = boundary_frame(greens.domain(), c[j]);
        if (!fr.in_collar) {
            throw CollarError("vortex " + std::to_string(j + 1) + " is outside the collar", j);
        }
        frames.push_back(fr);
    }
    const Eigen::VectorXd grad = energy_gradient(greens, gamma, c);
    double sum = 0.0;
    for (std::size_t k = 0; k < cluster.size(); ++k) {
        sum += dot(slot(grad, cluster[k]), frames[k].dist * frames[k].inward_normal);
    }
    return 2.0 * kPi * sum;
}

double boundary_weight_constant(std::span<const double> gamma, const std::vector<int>& cluster,
                                bool strictly_convex)
{
    double sq = 0.0;
    double cross_sum = 0.0;
    for (int i : cluster) {
        sq += gamma[i] * gamma[i];
        for (int j : cluster) {
            if (i != j && (!strictly_convex || gamma[i] * gamma[j] < 0.0)) {
                cross_sum += std::abs(gamma[i] * gamma[j]);
            }
        }
    }
    return 0.5 * (sq - cross_sum);
}

HessianResult hessian(const Greens& greens, std::span<const double> gamma, const Configuration& c)
{
    check_inputs(greens, gamma, c);
    const Eigen::VectorXd z = to_vector(c);
    const Eigen::Index m = z.size();
    const double sep = min_separation(greens.domain(), c).min();
    Eigen::MatrixXd k(m, m);
    for (Eigen::Index col = 0; col < m; ++col) {
        const double h = kHessianStep * std::max(1.0, std::abs(z[col]));
        if (!(sep > 100.0 * h)) {
            throw ConditioningError("finite-difference step is not small against the vortex separation");
        }
        // Fourth-order central stencil: the second-order one leaves O(h^2 / r^4) asymmetry
        // for pairs at separation r.
        auto grad_at = [&](double offset) {
            Eigen::VectorXd zs = z;
            zs[col] += offset;
            return energy_gradient(greens, gamma, from_vector(zs));
        };
        k.col(col) = (8.0 * (grad_at(h) - grad_at(-h)) - (grad_at(2.0 * h) - grad_at(-2.0 * h))) / (12.0 * h);
    }
    HessianResult out;
    out.asymmetry = (k - k.transpose()).cwiseAbs().maxCoeff();
    out.matrix = 0.5 * (k + k.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(out.matrix, Eigen::EigenvaluesOnly);
    out.eigenvalues = solver.eigenvalues();
    return out;
}

}  // namespace vortex
