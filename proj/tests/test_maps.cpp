#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dispertio/maps.hpp"

using namespace dispertio;

namespace {

const std::string kSmallMap =
    "type octile\n"
    "height 3\n"
    "width 4\n"
    "map\n"
    "....\n"
    ".@T.\n"
    ".G..\n";

}  // namespace

TEST_CASE("moving-ai parsing") {
    const OccupancyMap m = parse_map(kSmallMap);
    CHECK(m.width == 4);
    CHECK(m.height == 3);
    CHECK(m.cell_passable(0, 0));
    CHECK_FALSE(m.cell_passable(1, 1));  // '@'
    CHECK_FALSE(m.cell_passable(2, 1));  // 'T'
    CHECK(m.cell_passable(1, 2));        // 'G' is passable
    CHECK(m.cell_passable(3, 2));
}

TEST_CASE("parsing accepts CRLF and rejects malformed maps") {
    const OccupancyMap m = parse_map("type octile\r\nheight 1\r\nwidth 2\r\nmap\r\n.@\r\n");
    CHECK(m.cell_passable(0, 0));
    CHECK_FALSE(m.cell_passable(1, 0));

    CHECK_THROWS_AS(parse_map("type tile\nheight 1\nwidth 1\nmap\n.\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_map("type octile\nheight 1\nwidth 2\nmap\n.\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_map("type octile\nheight 1\nwidth 1\nmap\nX\n"), std::runtime_error);
}

TEST_CASE("serialize-parse round trip") {
    const OccupancyMap m = parse_map(kSmallMap, 0.5);
    const std::string text = serialize_map(m);
    const OccupancyMap r = parse_map(text, 0.5);
    CHECK(r.passable == m.passable);
    CHECK(r.width == m.width);
    CHECK(r.height == m.height);
    // 'G' and 'T' normalize to '.' and '@'
    CHECK(text.find('G') == std::string::npos);
    CHECK(text.find('T') == std::string::npos);
}

TEST_CASE("point queries respect cell_size and map bounds") {
    const OccupancyMap m = parse_map(kSmallMap, 2.0);
    CHECK(m.point_passable(0.5, 0.5));     // cell (0,0)
    CHECK_FALSE(m.point_passable(3.0, 3.0));  // cell (1,1) = '@'
    CHECK_FALSE(m.point_passable(-0.1, 0.5));
    CHECK_FALSE(m.point_passable(8.5, 0.5));  // past the right edge
    CHECK(m.point_inside(8.0, 6.0));
    CHECK_FALSE(m.point_inside(8.01, 6.0));
}

TEST_CASE("state_free for point robots") {
    const OccupancyMap m = parse_map(kSmallMap);
    const auto k = SteerKind::euclidean();
    CHECK(state_free({0.5, 0.5}, m, k));
    CHECK_FALSE(state_free({1.5, 1.5}, m, k));
    CHECK(state_free({1.5, 1.5, 2.0}, m, SteerKind::reeds_shepp(1.0)) == false);
    CHECK(state_free({0.5, 0.5, 2.0}, m, SteerKind::reeds_shepp(1.0)));
    CHECK_THROWS_AS(state_free({-1.0, 0.5}, m, k), std::out_of_range);
}

TEST_CASE("path_free straight corridors") {
    const OccupancyMap m = parse_map(kSmallMap);
    const auto k = SteerKind::euclidean();
    const auto t = SpaceTopology::box({0.0, 0.0}, {4.0, 3.0});
    // along the top row: clear
    CHECK(path_free({0.5, 0.5}, {3.5, 0.5}, m, k, t, 0.1));
    // through the blocked middle cells: collides
    CHECK_FALSE(path_free({0.5, 1.5}, {3.5, 1.5}, m, k, t, 0.1));
    // leaving the map is a collision, not an error
    CHECK_FALSE(path_free({0.5, 0.5}, {0.5, -2.0}, m, k, t, 0.1));
}

TEST_CASE("path_free follows the reeds-shepp arc, not the chord") {
    // free map except a block placed off the straight chord but on the arc
    OccupancyMap m = OccupancyMap::free_map(20, 20, 1.0);
    const auto k = SteerKind::reeds_shepp(4.0);
    const auto t = SpaceTopology::reeds_shepp_square(20.0);
    const State a{4.0, 4.0, 0.0}, b{12.0, 12.0, M_PI / 2.0};
    REQUIRE(path_free(a, b, m, k, t, 0.05));
    // the optimal word is arc-straight-arc; its straight leg crosses cell
    // (8, 6), well off the start-goal chord
    m.passable[6 * 20 + 8] = 0;
    CHECK_FALSE(path_free(a, b, m, k, t, 0.05));
    // the chord midpoint (8, 8) stays free, so chord checking would pass
    CHECK(m.point_passable(8.0, 8.0));
}

TEST_CASE("chain forward kinematics") {
    ChainModel chain;
    chain.link_lengths = {1, 1, 1, 1, 1, 1};
    chain.base_x = 2.0;
    chain.base_y = 3.0;
    chain.validate();
    // all-zero angles: chain extends along +x
    auto pts = chain.forward(State(6, 0.0));
    REQUIRE(pts.size() == 7);
    CHECK(pts[6].first == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(pts[6].second == doctest::Approx(3.0).epsilon(1e-12));
    // relative angles accumulate: pi/2 at joint 0, then zeros goes up
    State up(6, 0.0);
    up[0] = M_PI / 2.0;
    pts = chain.forward(up);
    CHECK(pts[6].first == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(pts[6].second == doctest::Approx(9.0).epsilon(1e-12));

    ChainModel bad;
    bad.link_lengths = {1, 1, 1};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("chain collision checking sweeps every link") {
    OccupancyMap m = OccupancyMap::free_map(16, 16, 1.0);
    ChainModel chain;
    chain.link_lengths = {1, 1, 1, 1, 1, 1};
    chain.base_x = 2.0;
    chain.base_y = 8.0;
    const auto k = SteerKind::euclidean();
    const State straight(6, 0.0);
    CHECK(state_free(straight, m, k, chain));
    // block a cell crossed by the middle of the chain only
    m.passable[8 * 16 + 5] = 0;
    CHECK_FALSE(state_free(straight, m, k, chain));
    // folding the chain upward avoids the block
    State bent(6, 0.0);
    bent[0] = M_PI / 2.0;
    CHECK(state_free(bent, m, k, chain));
}

TEST_CASE("chain path_free interpolates in joint space") {
    OccupancyMap m = OccupancyMap::free_map(16, 16, 1.0);
    ChainModel chain;
    chain.link_lengths = {1, 1, 1, 1, 1, 1};
    chain.base_x = 8.0;
    chain.base_y = 8.0;
    const auto k = SteerKind::euclidean();
    const auto t = SpaceTopology::torus(6);
    State a(6, 0.0);
    State b(6, 0.0);
    b[0] = M_PI / 2.0;
    REQUIRE(path_free(a, b, m, k, t, 0.05, chain));
    // block a cell that only intermediate sweep configurations touch: at 45
    // degrees the chain tip passes (12.2, 12.2)
    m.passable[12 * 16 + 12] = 0;
    const bool swept_hit = !path_free(a, b, m, k, t, 0.05, chain);
    const bool endpoints_ok = state_free(a, m, k, chain) && state_free(b, m, k, chain);
    CHECK(endpoints_ok);
    CHECK(swept_hit);
}
