#include "vortex/admissibility.hpp"
#include "vortex/errors.hpp"
#include "vortex/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace vortex;

namespace {

std::vector<double> v(std::initializer_list<double> l) { return l; }

// Recomputes the verdict a witness claims.
bool witness_violates_delta(std::span<const double> g, const std::vector<int>& c)
{
    double sum = 0.0, mag = 0.0;
    for (int i : c) {
        for (int j : c) {
            if (i != j) {
                sum += g[i] * g[j];
                mag += std::abs(g[i] * g[j]);
            }
        }
    }
    return !(std::abs(sum) > 1e-12 * mag);
}

}  // namespace

TEST_CASE("Delta-admissibility examples")
{
    CHECK(is_delta_admissible(v({1, -1})).ok);
    const DeltaResult r = is_delta_admissible(v({1, 1, -0.5}));
    CHECK_FALSE(r.ok);
    CHECK(r.witness == std::vector<int>{0, 1, 2});
    CHECK(is_delta_admissible(v({1, -2, 3})).ok);
    CHECK_THROWS_AS(is_delta_admissible(std::vector<double>(21, 1.0)), CapacityError);
}

TEST_CASE("boundary admissibility examples")
{
    CHECK(is_partial_admissible(v({1, -2}), false).ok);
    PartialResult r = is_partial_admissible(v({1, -1}), false);
    CHECK_FALSE(r.ok);
    CHECK(r.witness == std::vector<int>{0, 1});
    r = is_partial_admissible(v({1, -1}), true);
    CHECK_FALSE(r.ok);
    CHECK(r.strictly_convex_variant);
    // Same-sign pairs are free on strictly convex domains.
    CHECK_FALSE(is_partial_admissible(v({1, 1}), false).ok);
    CHECK(is_partial_admissible(v({1, 1}), true).ok);
}

TEST_CASE("line admissibility examples")
{
    LResult r = is_l_admissible(v({1, -2}));
    CHECK(r.kind == LKind::strict);
    CHECK(r.sigma.is_identity());
    CHECK(l_sequence(v({1, -2}), r) == v({1, 2}));

    CHECK(is_l_admissible(v({1, 1})).kind == LKind::none);
    CHECK(l_admissible_exhaustive(v({1, 1})).kind == LKind::none);

    r = is_l_admissible(v({-1, 2, -3}));
    CHECK(r.kind == LKind::strict);
    CHECK(r.sigma.is_identity());
    CHECK(l_sequence(v({-1, 2, -3}), r) == v({1, 2, 3}));

    // Equal moduli only reach the closure.
    CHECK(is_l_admissible(v({1, -1})).kind == LKind::weak);
    CHECK(is_l_admissible(v({2, -1, -3})).kind == LKind::strict);
    CHECK_THROWS_AS(l_admissible_exhaustive(std::vector<double>(11, 1.0)), CapacityError);
}

TEST_CASE("theorem selection")
{
    CHECK(admissibility_report(v({1, -2}), Domain::unit_disk()).theorem == Theorem::general);
    CHECK(admissibility_report(v({1, 2}), Domain::annulus(0.5)).theorem == Theorem::multiply_connected);
    CHECK(admissibility_report(v({1, -1}), Domain::unit_disk()).theorem == Theorem::none);
    CHECK(admissibility_report(v({1, 2}), Domain::unit_disk()).theorem == Theorem::none);
    CHECK_THROWS_AS(admissibility_report(v({1, 0}), Domain::unit_disk()), ConfigurationError);
    CHECK(to_string(Theorem::multiply_connected) == "multiply_connected");
}

TEST_CASE("predicates agree with naive enumeration")
{
    Rng rng(2024);
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 2 + rng.index(7);
        std::vector<double> g(n);
        const bool integer = k % 2 == 0;
        for (double& x : g) {
            if (integer) {
                x = static_cast<double>(1 + rng.index(3)) * (rng.uniform() < 0.5 ? -1 : 1);
            } else {
                x = rng.uniform(0.1, 3.0) * (rng.uniform() < 0.5 ? -1 : 1);
            }
        }
        const DeltaResult d = is_delta_admissible(g);
        CHECK(d.ok == oracle::delta_admissible(g));
        if (!d.ok) {
            CHECK(witness_violates_delta(g, d.witness));
        }
        for (bool convex : {false, true}) {
            CHECK(is_partial_admissible(g, convex).ok == oracle::partial_admissible(g, convex));
        }
        const LResult l = is_l_admissible(g);
        CHECK(oracle::l_rank(l.kind) == oracle::l_admissible(g));
        CHECK(l.kind == l_admissible_exhaustive(g).kind);
        if (l.kind != LKind::none) {
            const std::vector<double> t = l_sequence(g, l);
            for (std::size_t i = 0; i < t.size(); ++i) {
                CHECK(t[i] > 0);
                if (i > 0) {
                    CHECK(t[i] >= t[i - 1]);
                }
            }
        }
    }
}

TEST_CASE("predicates are invariant under sign flip and relabeling")
{
    Rng rng(7);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 2 + rng.index(5);
        std::vector<double> g(n);
        for (double& x : g) {
            x = static_cast<double>(1 + rng.index(4)) * (rng.uniform() < 0.5 ? -1 : 1);
        }
        std::vector<double> neg = g;
        for (double& x : neg) {
            x = -x;
        }
        std::vector<double> rev(g.rbegin(), g.rend());
        for (const auto& h : {neg, rev}) {
            CHECK(is_delta_admissible(h).ok == is_delta_admissible(g).ok);
            CHECK(is_partial_admissible(h, false).ok == is_partial_admissible(g, false).ok);
            CHECK(is_l_admissible(h).kind == is_l_admissible(g).kind);
        }
    }
}
