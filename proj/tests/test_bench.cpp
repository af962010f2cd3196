#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dispertio/bench.hpp"

using namespace dispertio;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("random maps are seeded, connected and bounded in density") {
    const auto maps = random_maps(9, 3, 16, 0.25, 0.5);
    REQUIRE(maps.size() == 3);
    const auto again = random_maps(9, 3, 16, 0.25, 0.5);
    for (std::size_t i = 0; i < 3; ++i) CHECK(maps[i].passable == again[i].passable);
    CHECK(maps[0].passable != maps[1].passable);
    CHECK(maps[0].cell_size == 0.5);

    // connectivity: flood from any free cell reaches all free cells
    for (const auto& m : maps) {
        std::size_t free_total = 0, first = m.passable.size();
        for (std::size_t i = 0; i < m.passable.size(); ++i)
            if (m.passable[i]) {
                ++free_total;
                if (first == m.passable.size()) first = i;
            }
        std::vector<std::uint8_t> seen(m.passable.size(), 0);
        std::vector<std::size_t> stack{first};
        seen[first] = 1;
        std::size_t reached = 0;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            ++reached;
            const std::size_t col = cur % 16, row = cur / 16;
            const std::size_t nbs[4][2] = {
                {col + 1, row}, {col, row + 1}, {col - 1, row}, {col, row - 1}};
            for (const auto& nb : nbs) {
                if (nb[0] >= 16 || nb[1] >= 16) continue;
                const std::size_t lin = nb[1] * 16 + nb[0];
                if (m.passable[lin] && !seen[lin]) {
                    seen[lin] = 1;
                    stack.push_back(lin);
                }
            }
        }
        CHECK(reached == free_total);
    }
    CHECK_THROWS_AS(random_maps(1, 1, 16, 0.9), std::invalid_argument);
}

TEST_CASE("random queries land on free cells with the required separation") {
    const auto maps = random_maps(3, 1, 16, 0.2, 0.25);
    const auto t = SpaceTopology::reeds_shepp_square(4.0);
    const auto qs = random_queries(maps[0], t, 12, 5, 1.0);
    REQUIRE(qs.size() == 12);
    for (const auto& q : qs) {
        CHECK(maps[0].point_passable(q.start[0], q.start[1]));
        CHECK(maps[0].point_passable(q.goal[0], q.goal[1]));
        const double dx = q.goal[0] - q.start[0], dy = q.goal[1] - q.start[1];
        CHECK(std::sqrt(dx * dx + dy * dy) >= 1.0);
        CHECK(q.start[2] >= -M_PI);
        CHECK(q.start[2] < M_PI);
    }
    const auto qs2 = random_queries(maps[0], t, 12, 5, 1.0);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(qs[i].start == qs2[i].start);
        CHECK(qs[i].goal == qs2[i].goal);
    }
}

TEST_CASE("bench config parsing") {
    std::istringstream is(
        "# comment\n"
        "space = rs\n"
        "width = 10\n"
        "rho = 1.5\n"
        "grid = 32x32x16\n"
        "samplers = dispertio,halton,iid:7\n"
        "n_schedule = 10,20\n"
        "map_seed = 4\n"
        "map_count = 2\n"
        "map_size = 32\n"
        "density = 0.15\n"
        "queries = 5\n"
        "query_seed = 11\n"
        "out = /tmp/x\n");
    const BenchConfig c = parse_bench_config(is);
    CHECK(c.space == "rs");
    CHECK(c.width == 10.0);
    CHECK(c.rho == 1.5);
    CHECK(c.grid == std::vector<std::size_t>{32, 32, 16});
    CHECK(c.samplers == std::vector<std::string>{"dispertio", "halton", "iid:7"});
    CHECK(c.n_schedule == std::vector<std::size_t>{10, 20});
    CHECK(c.map_count == 2);
    CHECK(c.queries == 5);
    CHECK(c.out == "/tmp/x");
    CHECK(c.steer().is_rs());
    CHECK(c.topology().dims() == 3);

    std::istringstream bad("bogus_key = 1\nsamplers = halton\nn_schedule = 5\n");
    CHECK_THROWS_AS(parse_bench_config(bad), std::invalid_argument);
    std::istringstream missing("space = euclid2\n");
    CHECK_THROWS_AS(parse_bench_config(missing), std::invalid_argument);
}

TEST_CASE("make_sample_set dispatches on the sampler name") {
    BenchConfig c;
    c.space = "euclid2";
    c.width = 1.0;
    c.grid = {16, 16};
    CHECK(make_sample_set("halton", 5, c).generator == "halton");
    CHECK(make_sample_set("iid:3", 5, c).generator == "iid:3");
    CHECK(make_sample_set("sukharev:2", 4, c).size() == 4);
    CHECK(make_sample_set("dispertio", 5, c).generator == "dispertio");
    CHECK_THROWS_AS(make_sample_set("nope", 5, c), std::invalid_argument);
}

TEST_CASE("benchmark runs are reproducible byte for byte") {
    BenchConfig c;
    c.space = "euclid2";
    c.width = 1.0;
    c.grid = {32, 32};
    c.samplers = {"halton", "iid:2"};
    c.n_schedule = {10, 20};
    c.map_seed = 8;
    c.map_count = 2;
    c.map_size = 16;
    c.density = 0.15;
    c.queries = 3;
    c.query_seed = 21;

    c.out = (fs::temp_directory_path() / "bench_a").string();
    const auto rows_a = run_benchmark(c);
    c.out = (fs::temp_directory_path() / "bench_b").string();
    const auto rows_b = run_benchmark(c);

    REQUIRE(rows_a.size() == rows_b.size());
    CHECK(rows_a.size() == 2 * 2 * 2 * 3);  // maps x samplers x n x queries
    const fs::path a(fs::temp_directory_path() / "bench_a");
    const fs::path b(fs::temp_directory_path() / "bench_b");
    CHECK(slurp(a / "results.csv") == slurp(b / "results.csv"));
    CHECK(slurp(a / "sets/halton.txt") == slurp(b / "sets/halton.txt"));
    CHECK(slurp(a / "sets/iid_2.txt") == slurp(b / "sets/iid_2.txt"));
    CHECK_FALSE(fs::exists(a / "timings.csv"));  // opt-in only

    const std::string head = slurp(a / "results.csv").substr(0, 33);
    CHECK(head == "sampler,map,query,n,success,cost\n");
}

TEST_CASE("pairwise scoring") {
    // two methods, three triples: a wins 2, loses 1 => score 1/sqrt(3)
    std::vector<BenchRow> rows;
    rows.push_back({"a", 0, 0, 10, true, 1.0});
    rows.push_back({"b", 0, 0, 10, true, 2.0});
    rows.push_back({"a", 0, 1, 10, true, 5.0});
    rows.push_back({"b", 0, 1, 10, false, 0.0});
    rows.push_back({"a", 1, 0, 10, true, 3.0});
    rows.push_back({"b", 1, 0, 10, true, 2.5});
    const ScoreMatrix sm = score_pairwise(rows);
    REQUIRE(sm.methods == std::vector<std::string>{"a", "b"});
    CHECK(sm.score[0][1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(sm.score[1][0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(sm.score[0][0] == 0.0);

    std::ostringstream os;
    write_scores(sm, os);
    CHECK(os.str().rfind("method,a,b\n", 0) == 0);

    rows.pop_back();  // misaligned group
    CHECK_THROWS_AS(score_pairwise(rows), std::invalid_argument);
}

TEST_CASE("dispersion trend decreases along each set") {
    const auto t = SpaceTopology::unit(2);
    auto g = build_grid(t, {32, 32});
    init_border(g, SteerKind::euclidean(), BorderMode::Analytic);
    const std::vector<SampleSet> sets{halton(50, t), iid_uniform(50, t, 3)};
    const auto rows = dispersion_trend(sets, {10, 25, 50}, g, SteerKind::euclidean());
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].sampler == "halton");
    CHECK(rows[3].sampler == "iid:3");
    for (std::size_t base : {std::size_t{0}, std::size_t{3}}) {
        CHECK(rows[base + 1].dispersion <= rows[base].dispersion);
        CHECK(rows[base + 2].dispersion <= rows[base + 1].dispersion);
    }
    // trend checkpoint equals a fresh measurement of the same prefix
    CHECK(rows[1].dispersion ==
          measure_dispersion(sets[0].prefix(25), g, SteerKind::euclidean()));
    CHECK_THROWS_AS(dispersion_trend(sets, {25, 10}, g, SteerKind::euclidean()),
                    std::invalid_argument);
    CHECK_THROWS_AS(dispersion_trend(sets, {60}, g, SteerKind::euclidean()),
                    std::invalid_argument);
}

TEST_CASE("coverage field and uncovered fraction") {
    const auto t = SpaceTopology::unit(2);
    auto g = build_grid(t, {16, 16});
    init_border(g, SteerKind::euclidean(), BorderMode::Analytic);
    SampleSet s;
    s.topology = t;
    s.samples = {{0.53125, 0.53125}};  // exact center of cell (8, 8)
    const auto field = coverage_field(s, g, SteerKind::euclidean());
    // the sampled cell is exactly covered
    CHECK(field.values[field.index_of({8, 8})] == 0.0);
    CHECK(uncovered_fraction(field, 1e-9) < 1.0);
    CHECK(uncovered_fraction(field, 0.0) == 1.0);   // v >= 0 everywhere
    CHECK(uncovered_fraction(field, 10.0) == 0.0);  // nothing that far
    // fraction is monotone in r
    CHECK(uncovered_fraction(field, 0.1) >= uncovered_fraction(field, 0.2));
}

TEST_CASE("coverage svg structure") {
    const auto t = SpaceTopology::unit(2);
    auto g = build_grid(t, {8, 8});
    init_border(g, SteerKind::euclidean(), BorderMode::Analytic);
    SampleSet s;
    s.topology = t;
    s.samples = {{0.25, 0.75}};
    const auto field = coverage_field(s, g, SteerKind::euclidean());
    const std::string svg = coverage_svg(field, s);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    std::size_t rects = 0;
    for (std::size_t p = svg.find("<rect"); p != std::string::npos;
         p = svg.find("<rect", p + 1))
        ++rects;
    CHECK(rects == 64);

    // 3D fields need a heading slice
    auto g3 = build_grid(SpaceTopology::reeds_shepp_square(1.0), {4, 4, 4});
    init_border(g3, SteerKind::reeds_shepp(1.0), BorderMode::BorderSamples);
    SampleSet s3;
    s3.topology = g3.topo;
    s3.samples = {{0.5, 0.5, 0.0}};
    const auto f3 = coverage_field(s3, g3, SteerKind::reeds_shepp(1.0));
    CHECK_THROWS_AS(coverage_svg(f3, s3), std::invalid_argument);
    CHECK(coverage_svg(f3, s3, {2}).rfind("<svg", 0) == 0);
    CHECK_THROWS_AS(coverage_svg(f3, s3, {9}), std::invalid_argument);
}
