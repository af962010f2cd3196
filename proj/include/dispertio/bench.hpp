#pragma once

// Experiment harness: randomized maps, seeded queries, per-query result
// tables, pairwise cost scoring, dispersion trends and coverage renderings.
// Every output except timings.csv is reproducible byte-for-byte from its
// config.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <tuple>

#include "dispertio.hpp"
#include "prm.hpp"
#include "samplers.hpp"

namespace dispertio {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Seeded obstacle grids whose free space forms a single 4-connected
/// component; disconnected draws are rejected and regenerated.
inline std::vector<OccupancyMap> random_maps(std::uint64_t seed, std::size_t count,
                                             std::size_t size, double density,
                                             double cell_size = 1.0) {
    if (density < 0.0 || density > 0.5)
        throw std::invalid_argument("random_maps: density must be in [0, 0.5]");
    if (size < 2) throw std::invalid_argument("random_maps: size must be >= 2");
    std::vector<OccupancyMap> maps;
    for (std::size_t mi = 0; mi < count; ++mi) {
        std::mt19937_64 rng(detail::mix64(seed ^ detail::mix64(mi)));
        bool ok = false;
        for (int attempt = 0; attempt < 256 && !ok; ++attempt) {
            OccupancyMap m = OccupancyMap::free_map(size, size, cell_size);
            for (auto& cell : m.passable)
                cell = detail::uniform01(rng) < density ? 0 : 1;
            std::size_t free_total = 0, first = m.passable.size();
            for (std::size_t i = 0; i < m.passable.size(); ++i)
                if (m.passable[i]) {
                    ++free_total;
                    if (first == m.passable.size()) first = i;
                }
            if (free_total == 0) continue;
            std::vector<std::uint8_t> seen(m.passable.size(), 0);
            std::vector<std::size_t> stack{first};
            seen[first] = 1;
            std::size_t reached = 0;
            while (!stack.empty()) {
                const std::size_t cur = stack.back();
                stack.pop_back();
                ++reached;
                const std::size_t col = cur % size, row = cur / size;
                // size_t wrap-around of col-1 / row-1 is caught by >= size
                const std::size_t nbs[4][2] = {{col + 1, row}, {col, row + 1},
                                               {col - 1, row}, {col, row - 1}};
                for (const auto& nb : nbs) {
                    if (nb[0] >= size || nb[1] >= size) continue;
                    const std::size_t lin = nb[1] * size + nb[0];
                    if (m.passable[lin] && !seen[lin]) {
                        seen[lin] = 1;
                        stack.push_back(lin);
                    }
                }
            }
            if (reached == free_total) {
                maps.push_back(std::move(m));
                ok = true;
            }
        }
        if (!ok)
            throw std::runtime_error(
                "random_maps: density too high to produce a connected map");
    }
    return maps;
}

struct Query {
    State start, goal;
};

/// Uniform free start/goal pairs with a minimum planar separation.
inline std::vector<Query> random_queries(const OccupancyMap& m, const SpaceTopology& t,
                                         std::size_t count, std::uint64_t seed,
                                         double min_separation) {
    std::mt19937_64 rng(detail::mix64(seed));
    const double w = static_cast<double>(m.width) * m.cell_size;
    const double h = static_cast<double>(m.height) * m.cell_size;
    auto draw_state = [&]() {
        State s(t.dims());
        s[0] = detail::uniform01(rng) * w;
        s[1] = detail::uniform01(rng) * h;
        for (std::size_t i = 2; i < t.dims(); ++i)
            s[i] = t.lower[i] + t.width(i) * detail::uniform01(rng);
        return s;
    };
    std::vector<Query> qs;
    while (qs.size() < count) {
        bool placed = false;
        for (int attempt = 0; attempt < 100000 && !placed; ++attempt) {
            State a = draw_state(), b = draw_state();
            if (!m.point_passable(a[0], a[1]) || !m.point_passable(b[0], b[1])) continue;
            const double dx = b[0] - a[0], dy = b[1] - a[1];
            if (std::sqrt(dx * dx + dy * dy) < min_separation) continue;
            qs.push_back({std::move(a), std::move(b)});
            placed = true;
        }
        if (!placed)
            throw std::runtime_error("random_queries: could not place query endpoints");
    }
    return qs;
}

struct BenchConfig {
    std::string space = "euclid2";         // euclid2 | rs
    double width = 1.0;                    // box side, meters
    double rho = 1.0;                      // rs turning radius
    std::vector<std::size_t> grid;         // dispersion grid resolution
    std::vector<std::string> samplers;     // dispertio | halton | iid:<seed> | sukharev:<k>
    std::vector<std::size_t> n_schedule;
    std::string map_source = "generated";  // generated | files
    std::vector<std::string> map_files;
    std::uint64_t map_seed = 1;
    std::size_t map_count = 1;
    std::size_t map_size = 64;             // cells per side
    double density = 0.2;
    std::size_t queries = 10;
    std::uint64_t query_seed = 1;
    double step = 0.0;                     // collision step; 0 = cell_size / 2
    bool timings = false;                  // also write wall-clock timings.csv
    std::string out = "bench_out";

    SpaceTopology topology() const {
        if (space == "rs") return SpaceTopology::reeds_shepp_square(width);
        if (space == "euclid2") return SpaceTopology::box({0.0, 0.0}, {width, width});
        throw std::invalid_argument("BenchConfig: unknown space " + space);
    }
    SteerKind steer() const {
        return space == "rs" ? SteerKind::reeds_shepp(rho) : SteerKind::euclidean();
    }
    std::vector<std::size_t> grid_resolution() const {
        if (!grid.empty()) return grid;
        if (space == "rs") return {64, 64, 32};
        return {256, 256};
    }
};

/// Flat key = value config, '#' comments, 'x'-separated grid resolutions and
/// comma-separated lists.
inline BenchConfig parse_bench_config(std::istream& is) {
    BenchConfig c;
    std::string line;
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        std::istringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep))
            if (!item.empty()) out.push_back(item);
        return out;
    };
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        if (eq == std::string::npos)
            throw std::invalid_argument("bench config: malformed line '" + line + "'");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "space") c.space = val;
        else if (key == "width") c.width = std::stod(val);
        else if (key == "rho") c.rho = std::stod(val);
        else if (key == "grid") {
            c.grid.clear();
            for (const auto& v : split(val, 'x')) c.grid.push_back(std::stoull(v));
        } else if (key == "samplers") c.samplers = split(val, ',');
        else if (key == "n_schedule") {
            c.n_schedule.clear();
            for (const auto& v : split(val, ',')) c.n_schedule.push_back(std::stoull(v));
        } else if (key == "map_source") c.map_source = val;
        else if (key == "map_files") c.map_files = split(val, ',');
        else if (key == "map_seed") c.map_seed = std::stoull(val);
        else if (key == "map_count") c.map_count = std::stoull(val);
        else if (key == "map_size") c.map_size = std::stoull(val);
        else if (key == "density") c.density = std::stod(val);
        else if (key == "queries") c.queries = std::stoull(val);
        else if (key == "query_seed") c.query_seed = std::stoull(val);
        else if (key == "step") c.step = std::stod(val);
        else if (key == "timings") c.timings = std::stoi(val) != 0;
        else if (key == "out") c.out = val;
        else throw std::invalid_argument("bench config: unknown key " + key);
    }
    if (c.samplers.empty() || c.n_schedule.empty())
        throw std::invalid_argument("bench config: samplers and n_schedule are required");
    return c;
}

struct BenchRow {
    std::string sampler;
    std::size_t map_id, query_id, n;
    bool success;
    double cost;  // meaningful only when success
};

/// Builds the named sampler's set of length n for the config's space.
inline SampleSet make_sample_set(const std::string& name, std::size_t n, const BenchConfig& c) {
    const SpaceTopology topo = c.topology();
    const SteerKind steer = c.steer();
    if (name == "dispertio") {
        DispersionGrid g = build_grid(topo, c.grid_resolution());
        if (steer.is_rs()) {
            const CenterDistanceTable table(g, steer);
            init_border(g, steer, BorderMode::BorderSamples, &table);
            return generate(n, g, steer, &table);
        }
        init_border(g, steer, BorderMode::Analytic);
        return generate(n, g, steer);
    }
    if (name == "halton") return halton(n, topo, steer);
    if (name.rfind("iid:", 0) == 0)
        return iid_uniform(n, topo, std::stoull(name.substr(4)), steer);
    if (name.rfind("sukharev:", 0) == 0)
        return sukharev(std::stoull(name.substr(9)), topo, steer);
    throw std::invalid_argument("unknown sampler " + name);
}

/// Runs the full protocol and writes results.csv (deterministic),
/// timings.csv (wall clock, excluded from the determinism contract) and one
/// sample-set file per sampler under <out>/sets/.
inline std::vector<BenchRow> run_benchmark(const BenchConfig& c) {
    namespace fs = std::filesystem;
    const SpaceTopology topo = c.topology();
    const SteerKind steer = c.steer();
    const std::size_t n_max = *std::max_element(c.n_schedule.begin(), c.n_schedule.end());

    fs::create_directories(fs::path(c.out) / "sets");

    std::vector<SampleSet> sets;
    for (const auto& name : c.samplers) {
        sets.push_back(make_sample_set(name, n_max, c));
        std::string fname = name;
        for (auto& ch : fname)
            if (ch == ':') ch = '_';
        std::ofstream os(fs::path(c.out) / "sets" / (fname + ".txt"));
        write_sample_set(os, sets.back());
    }

    std::vector<OccupancyMap> maps;
    const double cell = c.width / static_cast<double>(c.map_size);
    if (c.map_source == "generated") {
        maps = random_maps(c.map_seed, c.map_count, c.map_size, c.density, cell);
    } else if (c.map_source == "files") {
        for (const auto& f : c.map_files) {
            std::ifstream is(f);
            if (!is) throw std::runtime_error("run_benchmark: cannot read map file " + f);
            std::stringstream ss;
            ss << is.rdbuf();
            maps.push_back(parse_map(ss.str(), cell));
        }
    } else {
        throw std::invalid_argument("run_benchmark: unknown map_source " + c.map_source);
    }
    if (maps.empty()) throw std::invalid_argument("run_benchmark: no maps");

    const double step = c.step > 0.0 ? c.step : 0.5 * cell;
    std::vector<BenchRow> rows;
    std::vector<double> wall_ms;

    for (std::size_t mi = 0; mi < maps.size(); ++mi) {
        const auto queries = random_queries(maps[mi], topo, c.queries,
                                            c.query_seed ^ detail::mix64(mi), 0.25 * c.width);
        for (std::size_t si = 0; si < sets.size(); ++si) {
            for (std::size_t n : c.n_schedule) {
                const SampleSet prefix = sets[si].prefix(n);
                const Connection conn = Connection::k_nearest(connection_count(n, topo.dims()));
                const Roadmap rm = build_roadmap(prefix, maps[mi], steer, conn, step);
                for (std::size_t qi = 0; qi < queries.size(); ++qi) {
                    const auto t0 = std::chrono::steady_clock::now();
                    const PlanResult res = plan_on_roadmap(queries[qi].start, queries[qi].goal,
                                                           rm, maps[mi], steer, topo, conn, step);
                    const auto t1 = std::chrono::steady_clock::now();
                    rows.push_back({c.samplers[si], mi, qi, n, res.success,
                                    res.success ? res.cost : 0.0});
                    wall_ms.push_back(
                        std::chrono::duration<double, std::milli>(t1 - t0).count());
                }
            }
        }
    }

    {
        std::ofstream os(fs::path(c.out) / "results.csv");
        os << "sampler,map,query,n,success,cost\n";
        for (const auto& r : rows)
            os << r.sampler << ',' << r.map_id << ',' << r.query_id << ',' << r.n << ','
               << (r.success ? 1 : 0) << ',' << detail::fmt17(r.cost) << '\n';
    }
    if (c.timings) {
        // wall clock is inherently non-reproducible, so it lives in its own
        // opt-in file and results.csv stays byte-identical across reruns
        std::ofstream os(fs::path(c.out) / "timings.csv");
        os << "row,wall_ms\n";
        for (std::size_t i = 0; i < wall_ms.size(); ++i)
            os << i << ',' << wall_ms[i] << '\n';
    }
    return rows;
}

struct ScoreMatrix {
    std::vector<std::string> methods;
    std::vector<std::vector<double>> score;  // antisymmetric, normalized
};

/// Pairwise protocol: per aligned (map, query, n) triple the row method
/// earns +1 for the cheaper solution (one-sided success counts as a win),
/// -1 for the costlier one, 0 when both fail or tie; totals are divided by
/// sqrt(#triples).
inline ScoreMatrix score_pairwise(const std::vector<BenchRow>& rows) {
    ScoreMatrix sm;
    std::map<std::string, std::size_t> midx;
    for (const auto& r : rows)
        if (!midx.count(r.sampler)) {
            midx[r.sampler] = sm.methods.size();
            sm.methods.push_back(r.sampler);
        }
    const std::size_t M = sm.methods.size();
    sm.score.assign(M, std::vector<double>(M, 0.0));

    std::map<std::tuple<std::size_t, std::size_t, std::size_t>,
             std::vector<std::pair<std::size_t, const BenchRow*>>>
        groups;
    for (const auto& r : rows)
        groups[{r.map_id, r.query_id, r.n}].emplace_back(midx.at(r.sampler), &r);

    std::size_t triples = 0;
    for (const auto& [key, members] : groups) {
        (void)key;
        if (members.size() != M)
            throw std::invalid_argument("score_pairwise: misaligned result sets");
        ++triples;
        for (const auto& [ia, ra] : members) {
            for (const auto& [ib, rb] : members) {
                if (ia >= ib) continue;
                double s = 0.0;
                if (ra->success && !rb->success) s = 1.0;
                else if (!ra->success && rb->success) s = -1.0;
                else if (ra->success && rb->success) {
                    if (ra->cost < rb->cost) s = 1.0;
                    else if (ra->cost > rb->cost) s = -1.0;
                }
                sm.score[ia][ib] += s;
                sm.score[ib][ia] -= s;
            }
        }
    }
    if (triples > 0) {
        const double norm = std::sqrt(static_cast<double>(triples));
        for (auto& row : sm.score)
            for (double& v : row) v /= norm;
    }
    return sm;
}

inline void write_scores(const ScoreMatrix& sm, std::ostream& os) {
    os << "method";
    for (const auto& m : sm.methods) os << ',' << m;
    os << '\n';
    for (std::size_t i = 0; i < sm.methods.size(); ++i) {
        os << sm.methods[i];
        for (double v : sm.score[i]) os << ',' << detail::fmt17(v);
        os << '\n';
    }
}

struct TrendRow {
    std::string sampler;
    std::size_t n;
    double dispersion;
};

/// Measured dispersion of each set's prefixes at the given checkpoints,
/// inserting samples incrementally into a copy of the grid.
inline std::vector<TrendRow> dispersion_trend(const std::vector<SampleSet>& sets,
                                              const std::vector<std::size_t>& checkpoints,
                                              const DispersionGrid& g, const SteerKind& k,
                                              const CenterDistanceTable* table = nullptr) {
    if (!g.border_initialized)
        throw std::invalid_argument("dispersion_trend: grid border not initialized");
    std::vector<TrendRow> rows;
    for (const auto& set : sets) {
        DispersionGrid work = g;
        std::size_t done = 0;
        for (std::size_t n : checkpoints) {
            if (n > set.samples.size())
                throw std::invalid_argument("dispersion_trend: checkpoint beyond set size");
            if (n < done)
                throw std::invalid_argument("dispersion_trend: checkpoints must be ascending");
            for (; done < n; ++done) update_distance_matrix(work, set.samples[done], k, table);
            rows.push_back({set.generator, n, detail::max_value(work)});
        }
    }
    return rows;
}

/// Per-cell distance field after inserting the whole set (border included).
inline DispersionGrid coverage_field(const SampleSet& s, const DispersionGrid& g,
                                     const SteerKind& k,
                                     const CenterDistanceTable* table = nullptr) {
    if (!g.border_initialized)
        throw std::invalid_argument("coverage_field: grid border not initialized");
    DispersionGrid work = g;
    for (const State& x : s.samples) update_distance_matrix(work, x, k, table);
    return work;
}

/// Share of cells whose distance value reaches r (uncovered at radius r).
inline double uncovered_fraction(const DispersionGrid& field, double r) {
    std::size_t cnt = 0;
    for (double v : field.values)
        if (v >= r) ++cnt;
    return static_cast<double>(cnt) / static_cast<double>(field.values.size());
}

/// SVG raster of a 2D field (or a fixed slice of a higher-D one): bright
/// cells are far from every sample; sample positions drawn as red dots.
inline std::string coverage_svg(const DispersionGrid& field, const SampleSet& s,
                                const std::vector<std::size_t>& slice = {}) {
    if (field.dims() < 2)
        throw std::invalid_argument("coverage_svg: need at least 2 dimensions");
    if (field.dims() > 2 && slice.size() != field.dims() - 2)
        throw std::invalid_argument("coverage_svg: need a slice index per dimension beyond 2");
    const std::size_t rx = field.resolution[0], ry = field.resolution[1];
    for (std::size_t d = 2; d < field.dims(); ++d)
        if (slice[d - 2] >= field.resolution[d])
            throw std::invalid_argument("coverage_svg: slice index out of range");

    double vmax = 0.0;
    for (double v : field.values)
        if (std::isfinite(v)) vmax = std::max(vmax, v);
    if (vmax == 0.0) vmax = 1.0;

    // x axis = dimension 0 (left to right), y axis = dimension 1 (bottom up)
    const double px = 512.0 / static_cast<double>(std::max(rx, ry));
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
       << px * static_cast<double>(rx) << "\" height=\"" << px * static_cast<double>(ry)
       << "\">\n";
    std::vector<std::size_t> c(field.dims(), 0);
    for (std::size_t d = 2; d < field.dims(); ++d) c[d] = slice[d - 2];
    for (std::size_t i = 0; i < rx; ++i) {
        for (std::size_t j = 0; j < ry; ++j) {
            c[0] = i;
            c[1] = j;
            double v = field.values[field.index_of(c)];
            if (!std::isfinite(v)) v = vmax;
            const int lum = static_cast<int>(255.0 * v / vmax);
            os << "<rect x=\"" << px * static_cast<double>(i) << "\" y=\""
               << px * static_cast<double>(ry - 1 - j) << "\" width=\"" << px << "\" height=\""
               << px << "\" fill=\"rgb(" << lum << ',' << lum << ',' << std::max(32, lum)
               << ")\"/>\n";
        }
    }
    for (const State& x : s.samples) {
        const double fx = (x[0] - field.topo.lower[0]) / field.topo.width(0);
        const double fy = (x[1] - field.topo.lower[1]) / field.topo.width(1);
        os << "<circle cx=\"" << fx * px * static_cast<double>(rx) << "\" cy=\""
           << (1.0 - fy) * px * static_cast<double>(ry) << "\" r=\"2\" fill=\"red\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace dispertio
