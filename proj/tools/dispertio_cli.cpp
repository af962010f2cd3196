// Command-line front end: sample-set generation, dispersion measurement,
// planning on occupancy maps, benchmark runs and coverage figures.
// Exit codes: 0 success, 2 planning failure, 1 any other error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dispertio/bench.hpp"

namespace {

using namespace dispertio;

std::vector<std::size_t> parse_resolution(const std::string& s) {
    std::vector<std::size_t> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, 'x'))
        if (!item.empty()) out.push_back(std::stoull(item));
    return out;
}

State parse_state(const std::string& s) {
    State x;
    std::istringstream ss(s);
    double v;
    while (ss >> v) x.push_back(v);
    if (x.empty()) throw std::invalid_argument("empty state '" + s + "'");
    return x;
}

SampleSet load_set(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read sample set " + path);
    return read_sample_set(is);
}

OccupancyMap load_map(const std::string& path, double cell_size) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read map " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_map(ss.str(), cell_size);
}

/// Border-initialized grid (plus RS center-distance table) for a set's space.
struct GridContext {
    DispersionGrid grid;
    std::unique_ptr<CenterDistanceTable> table;

    GridContext(const SampleSet& s, std::vector<std::size_t> resolution) {
        if (resolution.empty()) {
            resolution.assign(s.topology.dims(), 0);
            for (std::size_t i = 0; i < s.topology.dims(); ++i)
                resolution[i] = s.topology.identified[i] ? 32 : 64;
        }
        grid = build_grid(s.topology, std::move(resolution));
        if (s.steer.is_rs()) {
            table = std::make_unique<CenterDistanceTable>(grid, s.steer);
            init_border(grid, s.steer, BorderMode::BorderSamples, table.get());
        } else {
            bool any_border = false;
            for (std::size_t i = 0; i < s.topology.dims(); ++i)
                if (!s.topology.identified[i]) any_border = true;
            init_border(grid, s.steer,
                        any_border ? BorderMode::Analytic : BorderMode::None);
        }
    }
};

int run(int argc, char** argv) {
    CLI::App app{"deterministic dispersion-optimized sampling and planning"};
    app.require_subcommand(1);

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "generate a sample set");
    std::string s_space = "euclid2", s_sampler = "halton", s_grid, s_out;
    double s_width = 1.0, s_rho = 1.0;
    std::size_t s_n = 100;
    sample->add_option("--space", s_space, "euclid2 | rs");
    sample->add_option("--steer", s_rho, "turning radius for rs (alias of --rho)");
    sample->add_option("--rho", s_rho, "turning radius for rs");
    sample->add_option("--width", s_width, "box side length");
    sample->add_option("--sampler", s_sampler,
                       "dispertio | halton | iid:<seed> | sukharev:<k>");
    sample->add_option("--n", s_n, "number of samples");
    sample->add_option("--grid", s_grid, "dispersion grid resolution, e.g. 64x64x32");
    sample->add_option("--out", s_out, "output file (stdout when omitted)");

    // ---- dispersion ----
    auto* disp = app.add_subcommand("dispersion", "measure a set's dispersion");
    std::string d_set, d_grid, d_trend;
    disp->add_option("--set", d_set, "sample-set file")->required();
    disp->add_option("--grid", d_grid, "grid resolution");
    disp->add_option("--trend", d_trend, "comma-separated prefix checkpoints");

    // ---- plan ----
    auto* plan_cmd = app.add_subcommand("plan", "plan a query on a map");
    std::string p_map, p_set, p_start, p_goal, p_roadmap_out;
    double p_step = 0.0, p_radius = 0.0;
    std::size_t p_k = 0;
    plan_cmd->add_option("--map", p_map, "moving-ai map file")->required();
    plan_cmd->add_option("--set", p_set, "sample-set file")->required();
    plan_cmd->add_option("--start", p_start, "start state, e.g. \"1 2 0.5\"")->required();
    plan_cmd->add_option("--goal", p_goal, "goal state")->required();
    plan_cmd->add_option("--step", p_step, "collision step (default cell/2)");
    plan_cmd->add_option("--k", p_k, "k-nearest override (default PRM* rule)");
    plan_cmd->add_option("--radius", p_radius, "radius mode instead of k-nearest");
    plan_cmd->add_option("--roadmap-out", p_roadmap_out, "dump the roadmap here");

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "run a benchmark config");
    std::string b_config;
    bench_cmd->add_option("--config", b_config, "flat key=value config file")->required();

    // ---- coverage ----
    auto* cov = app.add_subcommand("coverage", "render a coverage figure");
    std::string c_set, c_grid, c_out, c_slice;
    double c_r = -1.0;
    cov->add_option("--set", c_set, "sample-set file")->required();
    cov->add_option("--out", c_out, "output SVG file")->required();
    cov->add_option("--grid", c_grid, "grid resolution");
    cov->add_option("--slice", c_slice, "fixed cell index per dimension beyond 2");
    cov->add_option("--r", c_r, "also print the uncovered fraction at this radius");

    CLI11_PARSE(app, argc, argv);

    if (*sample) {
        BenchConfig c;
        c.space = s_space;
        c.width = s_width;
        c.rho = s_rho;
        c.grid = parse_resolution(s_grid);
        const SampleSet set = make_sample_set(s_sampler, s_n, c);
        if (s_out.empty()) {
            write_sample_set(std::cout, set);
        } else {
            std::ofstream os(s_out);
            if (!os) throw std::runtime_error("cannot write " + s_out);
            write_sample_set(os, set);
        }
        return 0;
    }

    if (*disp) {
        const SampleSet set = load_set(d_set);
        GridContext ctx(set, parse_resolution(d_grid));
        if (d_trend.empty()) {
            std::cout << detail::fmt17(
                             measure_dispersion(set, ctx.grid, set.steer, ctx.table.get()))
                      << '\n';
        } else {
            std::vector<std::size_t> checkpoints;
            std::istringstream ss(d_trend);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) checkpoints.push_back(std::stoull(item));
            const auto rows =
                dispersion_trend({set}, checkpoints, ctx.grid, set.steer, ctx.table.get());
            std::cout << "sampler,n,dispersion\n";
            for (const auto& r : rows)
                std::cout << r.sampler << ',' << r.n << ',' << detail::fmt17(r.dispersion)
                          << '\n';
        }
        return 0;
    }

    if (*plan_cmd) {
        const SampleSet set = load_set(p_set);
        const State start = parse_state(p_start), goal = parse_state(p_goal);
        // scale map cells so the map spans the set's first dimension
        OccupancyMap m = load_map(p_map, 1.0);
        m.cell_size = set.topology.width(0) / static_cast<double>(m.width);
        const double step = p_step > 0.0 ? p_step : 0.5 * m.cell_size;
        Connection conn =
            p_radius > 0.0
                ? Connection::within_radius(p_radius)
                : Connection::k_nearest(p_k > 0 ? p_k
                                                : connection_count(std::max<std::size_t>(
                                                                       set.size(), 2),
                                                                   set.topology.dims()));
        PlanStats build_stats;
        const Roadmap rm =
            build_roadmap(set, m, set.steer, conn, step, std::nullopt, &build_stats);
        if (!p_roadmap_out.empty()) {
            std::ofstream os(p_roadmap_out);
            if (!os) throw std::runtime_error("cannot write " + p_roadmap_out);
            dump_roadmap(rm, os);
        }
        const PlanResult res =
            plan_on_roadmap(start, goal, rm, m, set.steer, set.topology, conn, step);
        if (!res.success) {
            std::cout << "failure\n";
            return 2;
        }
        std::cout << "success cost " << detail::fmt17(res.cost) << '\n';
        for (const State& x : res.path) {
            for (std::size_t i = 0; i < x.size(); ++i)
                std::cout << (i ? " " : "") << detail::fmt17(x[i]);
            std::cout << '\n';
        }
        return 0;
    }

    if (*bench_cmd) {
        std::ifstream is(b_config);
        if (!is) throw std::runtime_error("cannot read config " + b_config);
        const BenchConfig c = parse_bench_config(is);
        const auto rows = run_benchmark(c);
        const ScoreMatrix sm = score_pairwise(rows);
        std::ofstream os(std::filesystem::path(c.out) / "scores.csv");
        write_scores(sm, os);
        std::cout << "rows " << rows.size() << " -> " << c.out << '\n';
        return 0;
    }

    if (*cov) {
        const SampleSet set = load_set(c_set);
        GridContext ctx(set, parse_resolution(c_grid));
        const DispersionGrid field =
            coverage_field(set, ctx.grid, set.steer, ctx.table.get());
        std::vector<std::size_t> slice;
        if (!c_slice.empty()) {
            std::istringstream ss(c_slice);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) slice.push_back(std::stoull(item));
        }
        std::ofstream os(c_out);
        if (!os) throw std::runtime_error("cannot write " + c_out);
        os << coverage_svg(field, set, slice);
        if (c_r >= 0.0)
            std::cout << detail::fmt17(uncovered_fraction(field, c_r)) << '\n';
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
