#include "vortex/errors.hpp"
#include "vortex/lemmas.hpp"

#include <doctest.h>

#include <cmath>

using namespace vortex;

namespace {

std::vector<Domain> domains()
{
    return {Domain::unit_disk(), Domain::annulus(0.5), Domain::conformal({{0, 0}, {1, 0}, {0.2, 0.1}})};
}

}  // namespace

TEST_CASE("projection derivative")
{
    for (const Domain& d : domains()) {
        const ProjectionCheck p = check_projection_derivative(d, 500, 3);
        CHECK(p.samples == 500);
        CHECK(p.max_rel_error < 1e-5);
    }
}

TEST_CASE("distance inequalities")
{
    for (const Domain& d : domains()) {
        const DistanceInequalities r = check_distance_inequalities(d, 2000, 5);
        CHECK(r.ok());
        CHECK(r.lower_violations == 0);
        CHECK(r.upper_violations == 0);
        CHECK(r.c6 > 0);
        CHECK(r.c7 > 0);
        CHECK(std::isfinite(r.c8));
    }
}

TEST_CASE("boundary interaction asymptotics")
{
    const std::vector<double> levels{1e-2, 1e-3, 1e-4};
    for (const Domain& d : domains()) {
        const InteractionCheck r = check_boundary_interaction(Greens(d), levels, 300, 9);
        REQUIRE(r.levels.size() == 3);
        CHECK(r.rate_ok);
        CHECK(r.bound_ok);
        CHECK(r.convex_ok);
        CHECK(r.levels[2].max_error < r.levels[0].max_error);
    }
}

TEST_CASE("line bound on the disk")
{
    const std::vector<double> gamma{-1.0, 2.0, -3.0};
    const LineBoundCheck r = check_line_bound(Greens(Domain::unit_disk()), gamma, 5000, 8, 11);
    CHECK(r.ok());
    CHECK(std::isfinite(r.sup_energy));
    CHECK(r.sequences == 8);
    CHECK(r.sequences_below == 8);
    for (double e : r.sequence_energy) {
        CHECK(e < r.min_energy);
    }
}

TEST_CASE("interior collision floor")
{
    const std::vector<double> gamma{1.0, -2.0, 3.0};
    const FloorCheck r = check_interior_collision(Greens(Domain::unit_disk()), gamma, 400, 13);
    CHECK(r.ok());
    CHECK(r.constant == doctest::Approx(4.0));
    CHECK(r.verified > 0);
    CHECK(r.worst_margin >= 0);
    const std::vector<double> bad{1.0, 1.0, -0.5};
    CHECK_THROWS_AS(check_interior_collision(Greens(Domain::unit_disk()), bad, 10, 1), ConfigurationError);
}

TEST_CASE("boundary pairing floor")
{
    const std::vector<double> gamma{1.0, -2.0};
    for (const Domain& d : domains()) {
        const FloorCheck r = check_boundary_pairing(Greens(d), gamma, 400, 17);
        CHECK(r.ok());
        CHECK(r.constant == doctest::Approx(0.5));
    }
}

TEST_CASE("spoke set energy is bounded above")
{
    const std::vector<double> gamma{1.0, 2.0};
    const SpokeBound s = check_spoke_bound(Greens(Domain::annulus(0.5)), gamma, 5000, 19);
    CHECK(s.samples == 5000);
    CHECK(std::isfinite(s.sup_energy));
    CHECK_THROWS(check_spoke_bound(Greens(Domain::unit_disk()), gamma, 10, 1));
}

TEST_CASE("checks do not depend on the thread count")
{
    const Domain d = Domain::annulus(0.4);
    const DistanceInequalities a = check_distance_inequalities(d, 1000, 2, 1);
    const DistanceInequalities b = check_distance_inequalities(d, 1000, 2, 3);
    CHECK(a.c6 == b.c6);
    CHECK(a.c7 == b.c7);
    CHECK(a.c8 == b.c8);
    const std::vector<double> gamma{-1.0, 2.0, -3.0};
    const LineBoundCheck x = check_line_bound(Greens(Domain::unit_disk()), gamma, 2000, 4, 5, 1);
    const LineBoundCheck y = check_line_bound(Greens(Domain::unit_disk()), gamma, 2000, 4, 5, 4);
    CHECK(x.sup_energy == y.sup_energy);
    CHECK(x.sequence_energy == y.sequence_energy);
}
