#include "vortex/errors.hpp"
#include "vortex/greens.hpp"
#include "vortex/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace vortex;

namespace {

// Independent closed forms for the disk.
double disk_green(Point x, Point y) { return std::log(std::abs(1.0 - x * std::conj(y)) / std::abs(x - y)) / (2 * kPi); }
double disk_robin(Point x) { return std::log(1.0 - std::norm(x)) / (2 * kPi); }

double fd_laplacian(const Greens& g, Point x, Point y, double h)
{
    auto G = [&](Point p) { return g.green(p, y).value; };
    return (G(x + h) + G(x - h) + G(x + Point(0, h)) + G(x - Point(0, h)) - 4 * G(x)) / (h * h);
}

std::vector<Greens> all_models()
{
    return {Greens(Domain::unit_disk()), Greens(Domain::annulus(0.5)),
            Greens(Domain::annulus(0.3), PeriodVector{{-0.2, -0.8}}),
            Greens(Domain::conformal({{0, 0}, {1, 0}, {0.25, 0}, {0, 0.05}}))};
}

}  // namespace

TEST_CASE("disk green examples")
{
    const Greens g(Domain::unit_disk());
    CHECK(g.green(Point(0, 0), Point(0.5, 0)).value == doctest::Approx(std::log(2.0) / (2 * kPi)).epsilon(1e-14));
    CHECK(g.green(Point(0.3, 0.2), Point(-0.4, 0.1)).value == g.green(Point(-0.4, 0.1), Point(0.3, 0.2)).value);
    Rng rng(1);
    for (int k = 0; k < 1000; ++k) {
        const Point x = std::polar(1 - 1e-6, rng.uniform(0, 2 * kPi));
        const Point y = sample_point(g.domain(), rng);
        CHECK(std::abs(g.green(x, y).value) < 1e-5);
    }
    CHECK_THROWS_AS(g.green(Point(0.1, 0), Point(0.1, 0)), SingularityError);
    CHECK_THROWS_AS(g.green(Point(1.1, 0), Point(0.1, 0)), DomainError);
}

TEST_CASE("disk regular part and Robin function")
{
    const Greens g(Domain::unit_disk());
    CHECK(g.regular_part(Point(0, 0), Point(0, 0)).g == 0.0);
    CHECK(g.regular_part(Point(0.5, 0), Point(0.5, 0)).g == doctest::Approx(std::log(0.75) / (2 * kPi)).epsilon(1e-14));
    CHECK(g.robin(Point(0, 0)).h == 0.0);
    CHECK(std::abs(g.robin(Point(0, 0)).grad_h) == 0.0);
    CHECK(g.robin(Point(0.5, 0)).h == doctest::Approx(-0.045787).epsilon(1e-5));
    // g is the limit of G + (1/2pi) ln|x - y| along a sequence.
    for (double r : {1e-2, 1e-4, 1e-6}) {
        const Point x{0.3, 0.1}, y = x + Point(r, 0);
        const double lim = g.green(x, y).value + std::log(r) / (2 * kPi);
        CHECK(std::abs(lim - g.robin(x).h) < 2 * r);
    }
    // h decreases monotonically towards the boundary.
    double prev = g.robin(Point(0.01, 0)).h;
    for (double r = 0.02; r < 1; r += 0.01) {
        const double h = g.robin(Point(r, 0)).h;
        CHECK(h < prev);
        CHECK(h == doctest::Approx(disk_robin({r, 0})).epsilon(1e-12));
        prev = h;
    }
}

TEST_CASE("conformal identity matches the disk")
{
    const Greens d(Domain::unit_disk());
    const Greens c(Domain::conformal({{0, 0}, {1, 0}}));
    Rng rng(2);
    for (int k = 0; k < 200; ++k) {
        const Point x = sample_point(d.domain(), rng), y = sample_point(d.domain(), rng);
        CHECK(std::abs(c.regular_part(x, y).g - d.regular_part(x, y).g) < 1e-12);
        CHECK(std::abs(c.green(x, y).value - disk_green(x, y)) < 1e-12);
        CHECK(std::abs(c.robin(x).h - disk_robin(x)) < 1e-12);
    }
}

TEST_CASE("symmetry on all models")
{
    for (const Greens& g : all_models()) {
        Rng rng(4);
        for (int k = 0; k < 500; ++k) {
            const Point x = sample_point(g.domain(), rng), y = sample_point(g.domain(), rng);
            CHECK(std::abs(g.green(x, y).value - g.green(y, x).value) < 1e-12);
        }
    }
}

TEST_CASE("harmonicity away from the pole")
{
    for (const Greens& g : all_models()) {
        Rng rng(6);
        int tested = 0;
        while (tested < 100) {
            const Point x = sample_point(g.domain(), rng), y = sample_point(g.domain(), rng);
            if (boundary_distance(g.domain(), x) <= 0.1 || std::abs(x - y) <= 0.1) {
                continue;
            }
            ++tested;
            // Mesh 1e-4: the five-point truncation error at mesh 1e-3 is ~1e-3 for |x - y| = 0.1.
            CHECK(std::abs(fd_laplacian(g, x, y, 1e-4)) < 1e-4);
        }
    }
}

TEST_CASE("analytic gradients match central differences")
{
    constexpr double h = 1e-6;
    for (const Greens& g : all_models()) {
        Rng rng(8);
        for (int k = 0; k < 100; ++k) {
            const Configuration c = sample_configuration(g.domain(), rng, 2, 0.05, 0.05);
            const Point x = c[0], y = c[1];
            const GreensEval e = g.green(x, y);
            const Point fx{(g.green(x + h, y).value - g.green(x - h, y).value) / (2 * h),
                           (g.green(x + Point(0, h), y).value - g.green(x - Point(0, h), y).value) / (2 * h)};
            const Point fy{(g.green(x, y + h).value - g.green(x, y - h).value) / (2 * h),
                           (g.green(x, y + Point(0, h)).value - g.green(x, y - Point(0, h)).value) / (2 * h)};
            CHECK(std::abs(e.grad_x - fx) <= 1e-6 * std::max(1.0, std::abs(fx)));
            CHECK(std::abs(e.grad_y - fy) <= 1e-6 * std::max(1.0, std::abs(fy)));

            const RobinEval r = g.robin(x);
            const Point fr{(g.robin(x + h).h - g.robin(x - h).h) / (2 * h),
                           (g.robin(x + Point(0, h)).h - g.robin(x - Point(0, h)).h) / (2 * h)};
            CHECK(std::abs(r.grad_h - fr) <= 1e-6 * std::max(1.0, std::abs(fr)));
        }
    }
}

TEST_CASE("annulus harmonic measure and periods")
{
    const Domain a = Domain::annulus(0.5);
    CHECK(inner_harmonic_measure(a, {0.5, 0}) == doctest::Approx(1.0));
    CHECK(inner_harmonic_measure(a, {0, 1}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(hydrodynamic_correction(Domain::unit_disk(), PeriodVector{{-1}}, {0.1, 0}, {0.2, 0}),
                    UnsupportedError);
    CHECK_THROWS_AS(Greens(a, PeriodVector{{-0.3, -0.3}}), DomainError);

    const Point y{0.1, 0.7};
    const double rc = 0.5 * (0.5 + std::abs(y));  // contour between the inner circle and y
    const Greens dirichlet_split(a, PeriodVector{{-1, 0}});
    CHECK(std::abs(circle_flux(dirichlet_split, y, rc)) < 1e-6);
    const Greens inner(a, PeriodVector{{0, -1}});
    CHECK(circle_flux(inner, y, rc) == doctest::Approx(-1.0).epsilon(1e-6));
    const Greens uniform(a);
    CHECK(circle_flux(uniform, y, rc) == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("annulus boundary values are constant on each circle")
{
    const Greens g(Domain::annulus(0.5), PeriodVector{{-0.5, -0.5}});
    Rng rng(12);
    for (int k = 0; k < 200; ++k) {
        const BoundaryPoint b = g.domain().boundary_point(rng.uniform());
        const Site x = g.boundary_site(b);
        const Site y = g.site(sample_point(g.domain(), rng));
        const GreensEval e = g.green(x, y);
        CHECK(std::abs(dot(e.grad_x, b.tangent)) < 1e-6);
    }
}

TEST_CASE("hypothesis audit on the disk")
{
    const Greens g(Domain::unit_disk());
    const HypothesisAuditReport r = hypothesis_audit(g, 10000, 0.1, 7);
    CHECK(r.samples == 10000);
    CHECK(std::isfinite(r.c0_hat));
    CHECK(std::isfinite(r.c1_hat));
    CHECK(r.c1_hat <= std::log(2.0) / (2 * kPi));  // |1 - x conj(y)| < 2
    CHECK(std::isfinite(r.c4_hat));
    CHECK(r.symmetry_residual < 1e-12);
    CHECK(r.boundary_residual < 1e-8);
    CHECK(r.laplacian_residual < 1e-4);
    CHECK_THROWS(hypothesis_audit(g, 10, 0.1));
}

TEST_CASE("audit is independent of the thread count")
{
    const Greens g(Domain::annulus(0.4));
    const HypothesisAuditReport a = hypothesis_audit(g, 2000, 0.1, 3, 1);
    const HypothesisAuditReport b = hypothesis_audit(g, 2000, 0.1, 3, 4);
    CHECK(a.c0_hat == b.c0_hat);
    CHECK(a.c3_hat == b.c3_hat);
    CHECK(a.c4_hat == b.c4_hat);
    CHECK(a.laplacian_residual == b.laplacian_residual);
}
