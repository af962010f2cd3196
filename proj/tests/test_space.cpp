#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dispertio/steer.hpp"

using namespace dispertio;

TEST_CASE("normalize wraps identified coordinates") {
    SpaceTopology t;
    t.lower = {-M_PI};
    t.upper = {M_PI};
    t.identified = {true};
    t.weights = {1.0};
    const State s = normalize({3.0 * M_PI / 2.0}, t);
    CHECK(s[0] == doctest::Approx(-M_PI / 2.0).epsilon(1e-12));
}

TEST_CASE("normalize leaves non-identified coordinates unchanged") {
    const auto t = SpaceTopology::unit(1);
    CHECK(normalize({0.7}, t)[0] == 0.7);
}

TEST_CASE("normalize wraps a Reeds-Shepp heading") {
    const auto t = SpaceTopology::reeds_shepp_square(10.0);
    const State s = normalize({1.0, 2.0, 7.0}, t);
    CHECK(s[0] == 1.0);
    CHECK(s[1] == 2.0);
    CHECK(s[2] == doctest::Approx(7.0 - 2.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("normalize is exactly idempotent") {
    const auto t = SpaceTopology::reeds_shepp_square(1.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const State s{u(rng), u(rng), u(rng)};
        const State n1 = normalize(s, t);
        const State n2 = normalize(n1, t);
        CHECK(n1 == n2);
    }
}

TEST_CASE("normalize preserves distances under both steers") {
    const auto t = SpaceTopology::reeds_shepp_square(4.0);
    const auto rs = SteerKind::reeds_shepp(1.0);
    const auto eu = SteerKind::euclidean();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0.0, 4.0), ang(-9.0, 9.0);
    for (int i = 0; i < 200; ++i) {
        const State a{pos(rng), pos(rng), ang(rng)};
        const State b{pos(rng), pos(rng), ang(rng)};
        CHECK(dist(a, b, rs, t) ==
              doctest::Approx(dist(normalize(a, t), normalize(b, t), rs, t)).epsilon(1e-12));
        CHECK(dist(a, b, eu, t) ==
              doctest::Approx(dist(normalize(a, t), normalize(b, t), eu, t)).epsilon(1e-12));
    }
}

TEST_CASE("contains checks non-identified bounds only") {
    const auto sq = SpaceTopology::unit(2);
    CHECK(contains({0.5, 0.5}, sq));
    CHECK_FALSE(contains({1.1, 0.5}, sq));

    const auto rs = SpaceTopology::reeds_shepp_square(1.0);
    CHECK(contains({0.5, 0.5, 100.0}, rs));  // identified dims never fail
}

TEST_CASE("dimension mismatches are rejected") {
    const auto t = SpaceTopology::unit(2);
    CHECK_THROWS_AS(normalize({0.1}, t), std::invalid_argument);
    CHECK_THROWS_AS(contains({0.1, 0.2, 0.3}, t), std::invalid_argument);
}

TEST_CASE("topology validation") {
    CHECK_THROWS_AS(SpaceTopology::box({0.0}, {0.0}), std::invalid_argument);
    SpaceTopology t = SpaceTopology::unit(2);
    t.weights[1] = -1.0;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("coord_delta takes the short way around") {
    const auto t = SpaceTopology::torus(1);
    CHECK(coord_delta(M_PI - 0.1, -M_PI + 0.1, t, 0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(coord_delta(-M_PI + 0.1, M_PI - 0.1, t, 0) == doctest::Approx(-0.2).epsilon(1e-12));
}
