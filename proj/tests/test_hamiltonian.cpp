#include "vortex/admissibility.hpp"
#include "vortex/errors.hpp"
#include "vortex/hamiltonian.hpp"
#include "vortex/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace vortex;

namespace {

std::vector<double> random_gamma(Rng& rng, std::size_t n)
{
    std::vector<double> g(n);
    for (double& v : g) {
        v = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
    }
    return g;
}

}  // namespace

TEST_CASE("energy examples")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> one{1.0};
    CHECK(energy(g, one, {{{0, 0}}}) == 0.0);
    const std::vector<double> dipole{1.0, -1.0};
    const double expected = (2 * std::log(0.75) - 2 * std::log(1.25)) / (2 * kPi);
    CHECK(energy(g, dipole, {{{0.5, 0}, {-0.5, 0}}}) == doctest::Approx(expected).epsilon(1e-14));
    CHECK_THROWS_AS(energy(g, dipole, {{{0.5, 0}, {0.5, 0}}}), ConfigurationError);
    CHECK_THROWS_AS(energy(g, dipole, {{{0.5, 0}}}), ConfigurationError);
    const std::vector<double> zero{1.0, 0.0};
    CHECK_THROWS_AS(energy(g, zero, {{{0.5, 0}, {-0.5, 0}}}), ConfigurationError);
}

TEST_CASE("gradient examples")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> one{1.0};
    CHECK(energy_gradient(g, one, {{{0, 0}}}).norm() == 0.0);
    const std::vector<double> pair{1.0, 1.0};
    const Eigen::VectorXd gr = energy_gradient(g, pair, {{{0.3, 0}, {-0.3, 0}}});
    CHECK(gr[0] == doctest::Approx(-gr[2]).epsilon(1e-14));
    CHECK(gr[1] == 0.0);
    CHECK(gr[3] == 0.0);
}

TEST_CASE("energy invariances and gradient consistency on every model")
{
    const std::vector<Greens> models{Greens(Domain::unit_disk()), Greens(Domain::annulus(0.4)),
                                     Greens(Domain::conformal({{0, 0}, {1, 0}, {0.2, 0.1}}))};
    for (const Greens& g : models) {
        Rng rng(21);
        for (int k = 0; k < 40; ++k) {
            const std::size_t n = 2 + rng.index(4);
            const std::vector<double> gamma = random_gamma(rng, n);
            const Configuration c = sample_configuration(g.domain(), rng, n, 0.05, 0.05);
            const EnergyEval e = energy_and_gradient(g, gamma, c);
            CHECK(e.value == doctest::Approx(energy(g, gamma, c)).epsilon(1e-14));

            std::vector<double> neg = gamma;
            for (double& v : neg) {
                v = -v;
            }
            CHECK(energy(g, neg, c) == doctest::Approx(e.value).epsilon(1e-13));

            const Permutation s = Permutation::from_cycles(n, {{1, static_cast<int>(n)}});
            const std::vector<double> pg = permute(s, std::span<const double>(gamma));
            CHECK(energy(g, pg, permute(s, c)) == doctest::Approx(e.value).epsilon(1e-13));

            const Eigen::VectorXd fd = oracle::fd_gradient(g, gamma, c, 1e-6);
            CHECK((e.grad - fd).norm() <= 1e-6 * std::max(1.0, fd.norm()));
        }
    }
}

TEST_CASE("cluster log energy examples")
{
    const std::vector<double> gamma{1.0, -2.0};
    const ClusterPartition p{{{0, 1}}};
    CHECK(cluster_log_energy(gamma, {{{0, 0}, {1, 0}}}, p).total == 0.0);
    const ClusterEnergy e = cluster_log_energy(gamma, {{{0, 0}, {std::exp(1.0), 0}}}, p);
    CHECK(e.total == doctest::Approx(-4.0));
    REQUIRE(e.per_cluster.size() == 1);
    CHECK(e.per_cluster[0] == doctest::Approx(-4.0));
    CHECK_THROWS_AS(cluster_log_energy(gamma, {{{0, 0}, {0, 0}}}, p), SingularityError);
    CHECK_THROWS_AS((ClusterPartition{{{0}, {0, 1}}}.check(2)), std::invalid_argument);
}

TEST_CASE("cluster gradient lower bound")
{
    const std::vector<double> gamma{1.0, -2.0, 3.0, -0.7};
    const double cg = collision_weight_constant(gamma).value;
    REQUIRE(cg > 0);
    Rng rng(4);
    const std::vector<ClusterPartition> parts{{{{0, 1, 2, 3}}}, {{{0, 1}, {2, 3}}}, {{{0, 2}, {1}, {3}}}};
    for (const ClusterPartition& p : parts) {
        for (int k = 0; k < 200; ++k) {
            Configuration w{std::vector<Point>(4)};
            double spread = 0.0;
            for (const auto& block : p.blocks) {
                const Point zc{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
                const double r = rng.log_uniform(1e-6, 1e-1);
                for (int i : block) {
                    const Point u = r * Point(rng.uniform(-1, 1), rng.uniform(-1, 1));
                    w[static_cast<std::size_t>(i)] = zc + u;
                    if (block.size() >= 2) {
                        spread += std::norm(u);
                    }
                }
            }
            const ClusterEnergy e = cluster_log_energy(gamma, w, p);
            CHECK(e.grad.norm() >= cg / std::sqrt(spread) * (1 - 1e-9));
        }
    }
}

TEST_CASE("collision weight examples")
{
    CHECK(collision_weight_constant(std::vector<double>{1, -2, 3}).value == doctest::Approx(4.0));
    CHECK(collision_weight_constant(std::vector<double>{1, -1}).value == doctest::Approx(2.0));
    const CollisionWeight w = collision_weight_constant(std::vector<double>{1, 1, -0.5});
    CHECK(w.value == 0.0);
    CHECK_FALSE(w.delta_admissible);
    CHECK_THROWS_AS(collision_weight_constant(std::vector<double>(13, 1.0)), CapacityError);
}

TEST_CASE("boundary interaction on a normal ray vanishes")
{
    const Greens g(Domain::unit_disk());
    double prev = 1.0;
    for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const BoundaryInteraction a = boundary_interaction(g, {1 - 3 * d, 0}, {1 - d, 0});
        CHECK(a.predictor == 0.0);
        CHECK(std::abs(a.exact) < prev);
        prev = std::abs(a.exact);
    }
    CHECK(prev < 1e-3);
    CHECK_THROWS_AS(boundary_interaction(g, {0.1, 0}, {0.99, 0}), CollarError);
}

TEST_CASE("boundary interaction is bounded near the disk boundary")
{
    const Greens g(Domain::unit_disk());
    Rng rng(17);
    for (int k = 0; k < 2000; ++k) {
        const double d = rng.log_uniform(1e-6, 1e-2);
        const Point y = std::polar(1 - d * rng.uniform(0.1, 1), rng.uniform(0, 2 * kPi));
        const Point x = std::polar(1 - d * rng.uniform(0.1, 1), std::arg(y) + d * rng.uniform(-3, 3));
        if (x == y) {
            continue;
        }
        const BoundaryInteraction a = boundary_interaction(g, x, y);
        CHECK(std::abs(a.exact) <= 1.1);
        CHECK(a.exact >= -0.1);
        CHECK(std::abs(a.predictor) <= 1.0);
    }
}

TEST_CASE("boundary pairing examples")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> one{1.0};
    double last = 0.0;
    for (double d : {1e-2, 1e-4, 1e-6}) {
        last = boundary_pairing(g, one, {{{1 - d, 0}}}, {0});
        // Closed form: grad h = -(1/pi) x / (1 - |x|^2), nu = -x/|x|.
        const double r = 1 - d;
        CHECK(last == doctest::Approx(2 * kPi * d * r / (kPi * (1 - r * r))).epsilon(1e-9));
    }
    CHECK(last == doctest::Approx(1.0).epsilon(1e-5));
    const std::vector<double> pair{1.0, -2.0};
    CHECK(boundary_pairing(g, pair, {{{0.1, 0}, {0.2, 0}}}, {}) == 0.0);
    try {
        boundary_pairing(g, pair, {{{0.99, 0}, {0.1, 0}}}, {0, 1});
        FAIL("expected CollarError");
    } catch (const CollarError& e) {
        CHECK(e.index() == 1);
    }
}

TEST_CASE("boundary weight examples")
{
    CHECK(boundary_weight_constant(std::vector<double>{1, -2}, {0, 1}, false) == doctest::Approx(0.5));
    CHECK(boundary_weight_constant(std::vector<double>{1, -1}, {0, 1}, false) == doctest::Approx(0.0));
    CHECK(boundary_weight_constant(std::vector<double>{1, 1}, {0, 1}, true) == doctest::Approx(1.0));
}

TEST_CASE("Hessian at the disk center")
{
    const Greens g(Domain::unit_disk());
    const std::vector<double> one{1.0};
    const HessianResult h = hessian(g, one, {{{0, 0}}});
    CHECK(h.matrix(0, 0) == doctest::Approx(-1 / kPi).epsilon(1e-8));
    CHECK(h.matrix(1, 1) == doctest::Approx(-1 / kPi).epsilon(1e-8));
    CHECK(std::abs(h.matrix(0, 1)) < 1e-8);
}

TEST_CASE("Hessian symmetry and rotation invariance")
{
    const Greens g(Domain::unit_disk());
    Rng rng(31);
    for (int k = 0; k < 20; ++k) {
        const std::size_t n = 2 + rng.index(3);
        const std::vector<double> gamma = random_gamma(rng, n);
        const Configuration c = sample_configuration(g.domain(), rng, n, 0.1, 0.1);
        const HessianResult a = hessian(g, gamma, c);
        CHECK(a.asymmetry < 1e-6);
        Configuration rc = c;
        const Point rot = std::polar(1.0, rng.uniform(0, 2 * kPi));
        for (Point& p : rc.points) {
            p *= rot;
        }
        const HessianResult b = hessian(g, gamma, rc);
        const double scale = std::max(1.0, a.eigenvalues.cwiseAbs().maxCoeff());
        CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() < 1e-8 * scale);
    }
}
