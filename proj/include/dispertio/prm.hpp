#pragma once

// Deterministic PRM*: roadmap construction over a pre-drawn sample set,
// k-nearest or radius connections, label-setting shortest path with
// lowest-index tie-breaking. Identical inputs give identical results.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <tuple>

#include "maps.hpp"
#include "sample_set.hpp"

namespace dispertio {

/// k_n = ceil(e (1 + 1/D) ln n), the PRM* k-nearest rule.
inline std::size_t connection_count(std::size_t n, std::size_t dims) {
    if (n < 2) throw std::invalid_argument("connection_count: need n >= 2");
    if (dims == 0) throw std::invalid_argument("connection_count: need dims >= 1");
    const double k = M_E * (1.0 + 1.0 / static_cast<double>(dims)) *
                     std::log(static_cast<double>(n));
    return static_cast<std::size_t>(std::ceil(k));
}

struct Connection {
    enum class Mode { KNearest, Radius };
    Mode mode = Mode::KNearest;
    std::size_t k = 0;       // KNearest: neighbors per vertex
    double radius = 0.0;     // Radius: connect all pairs within this dist

    static Connection k_nearest(std::size_t k) { return {Mode::KNearest, k, 0.0}; }
    static Connection within_radius(double r) { return {Mode::Radius, 0, r}; }
};

struct Roadmap {
    std::vector<State> vertices;
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;  // i < j, sorted
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
};

struct PlanStats {
    std::size_t vertices = 0;
    std::size_t edges_tested = 0;
    std::size_t collision_checks = 0;
};

struct PlanResult {
    bool success = false;
    std::vector<State> path;  // waypoint vertices, start first
    double cost = 0.0;
    PlanStats stats;
};

struct StartGoalInCollision : std::runtime_error {
    StartGoalInCollision() : std::runtime_error("start or goal state is in collision") {}
};

/// Indices of the k nearest states to x under the steer metric, ascending
/// (dist, index). Uses the Euclidean/turning lower bound to skip most exact
/// Reeds-Shepp evaluations.
inline std::vector<std::size_t> k_nearest(const std::vector<State>& set, const State& x,
                                          std::size_t k, const SteerKind& steer,
                                          const SpaceTopology& t) {
    if (set.empty()) throw std::invalid_argument("k_nearest: empty set");
    k = std::min(k, set.size());

    std::vector<std::pair<double, std::size_t>> order(set.size());
    for (std::size_t i = 0; i < set.size(); ++i)
        order[i] = {dist_lower_bound(x, set[i], steer, t), i};
    std::sort(order.begin(), order.end());

    // best k as (dist, index), worst kept at the back
    std::vector<std::pair<double, std::size_t>> best;
    best.reserve(k + 1);
    for (const auto& [lb, i] : order) {
        if (best.size() == k && lb > best.back().first) break;
        const double d = dist(x, set[i], steer, t);
        best.emplace_back(d, i);
        std::sort(best.begin(), best.end());
        if (best.size() > k) best.pop_back();
    }
    std::vector<std::size_t> out(best.size());
    for (std::size_t i = 0; i < best.size(); ++i) out[i] = best[i].second;
    return out;
}

namespace detail {

inline std::vector<std::size_t> neighbors_for(const std::vector<State>& v, std::size_t i,
                                              const Connection& conn, const SteerKind& steer,
                                              const SpaceTopology& t) {
    if (conn.mode == Connection::Mode::KNearest) {
        // exclude the vertex itself: ask for k+1 and drop i
        auto idx = k_nearest(v, v[i], conn.k + 1, steer, t);
        std::erase(idx, i);
        if (idx.size() > conn.k) idx.resize(conn.k);
        return idx;
    }
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j == i) continue;
        if (dist_lower_bound(v[i], v[j], steer, t) > conn.radius) continue;
        if (dist(v[i], v[j], steer, t) <= conn.radius) out.push_back(j);
    }
    return out;
}

}  // namespace detail

/// PRM* roadmap over the free samples of the set. Blocked samples are
/// discarded first; every stored edge passed path_free. Edges are kept in
/// canonical (i, j) order so the result is schedule-independent.
inline Roadmap build_roadmap(const SampleSet& s, const OccupancyMap& m, const SteerKind& steer,
                             const Connection& conn, double step,
                             const std::optional<ChainModel>& chain = std::nullopt,
                             PlanStats* stats = nullptr) {
    Roadmap r;
    for (const State& x : s.samples)
        if (state_free(x, m, steer, chain)) r.vertices.push_back(x);
    r.adjacency.resize(r.vertices.size());
    if (r.vertices.size() < 2) return r;

    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t i = 0; i < r.vertices.size(); ++i)
        for (std::size_t j : detail::neighbors_for(r.vertices, i, conn, steer, s.topology))
            candidates.emplace_back(std::min(i, j), std::max(i, j));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& [i, j] : candidates) {
        if (stats) ++stats->edges_tested;
        if (!path_free(r.vertices[i], r.vertices[j], m, steer, s.topology, step, chain)) continue;
        const double c = dist(r.vertices[i], r.vertices[j], steer, s.topology);
        r.edges.emplace_back(i, j, c);
        r.adjacency[i].emplace_back(j, c);
        r.adjacency[j].emplace_back(i, c);
    }
    if (stats) stats->vertices = r.vertices.size();
    return r;
}

/// Dijkstra with (cost, vertex-index) ordering; returns per-vertex costs and
/// predecessors from the source.
inline void shortest_path_tree(const Roadmap& r, std::size_t source, std::vector<double>& cost,
                               std::vector<std::size_t>& pred) {
    const std::size_t n = r.vertices.size();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    cost.assign(n, std::numeric_limits<double>::infinity());
    pred.assign(n, none);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    cost[source] = 0.0;
    pq.emplace(0.0, source);
    while (!pq.empty()) {
        const auto [c, u] = pq.top();
        pq.pop();
        if (c > cost[u]) continue;
        for (const auto& [v, w] : r.adjacency[u]) {
            const double nc = c + w;
            if (nc < cost[v] || (nc == cost[v] && u < pred[v])) {
                cost[v] = nc;
                pred[v] = u;
                pq.emplace(nc, v);
            }
        }
    }
}

/// Connects start and goal into a copy of the roadmap and extracts the
/// cheapest path. Throws StartGoalInCollision for blocked endpoints; a
/// missing path is an unsuccessful result, not an error.
inline PlanResult plan_on_roadmap(const State& start, const State& goal, Roadmap r,
                                  const OccupancyMap& m, const SteerKind& steer,
                                  const SpaceTopology& t, const Connection& conn, double step,
                                  const std::optional<ChainModel>& chain = std::nullopt) {
    PlanResult res;
    if (!state_free(start, m, steer, chain) || !state_free(goal, m, steer, chain))
        throw StartGoalInCollision{};

    const State sn = normalize(start, t), gn = normalize(goal, t);
    const std::size_t is = r.vertices.size();
    r.vertices.push_back(sn);
    const std::size_t ig = r.vertices.size();
    r.vertices.push_back(gn);
    r.adjacency.resize(r.vertices.size());
    for (std::size_t v : {is, ig}) {
        for (std::size_t j : detail::neighbors_for(r.vertices, v, conn, steer, t)) {
            if (j >= is && v > j) continue;  // start-goal edge added once
            ++res.stats.edges_tested;
            if (!path_free(r.vertices[v], r.vertices[j], m, steer, t, step, chain)) continue;
            const double c = dist(r.vertices[v], r.vertices[j], steer, t);
            r.adjacency[v].emplace_back(j, c);
            r.adjacency[j].emplace_back(v, c);
        }
    }

    std::vector<double> cost;
    std::vector<std::size_t> pred;
    shortest_path_tree(r, is, cost, pred);
    res.stats.vertices = r.vertices.size();
    if (!std::isfinite(cost[ig])) {
        if (sn == gn) {  // degenerate same-state query
            res.success = true;
            res.path = {sn};
            res.cost = 0.0;
        }
        return res;
    }
    res.success = true;
    res.cost = cost[ig];
    std::vector<State> rev;
    for (std::size_t v = ig; v != is; v = pred[v]) rev.push_back(r.vertices[v]);
    rev.push_back(sn);
    res.path.assign(rev.rbegin(), rev.rend());
    return res;
}

/// Full PRM* pipeline: free-sample filtering, roadmap, query.
inline PlanResult plan(const State& start, const State& goal, const SampleSet& s,
                       const OccupancyMap& m, const SteerKind& steer, const Connection& conn,
                       double step, const std::optional<ChainModel>& chain = std::nullopt) {
    PlanStats build_stats;
    Roadmap r = build_roadmap(s, m, steer, conn, step, chain, &build_stats);
    PlanResult res = plan_on_roadmap(start, goal, std::move(r), m, steer, s.topology, conn, step,
                                     chain);
    res.stats.edges_tested += build_stats.edges_tested;
    return res;
}

/// Debug dump: vertex table then an (i, j, cost) edge list.
inline void dump_roadmap(const Roadmap& r, std::ostream& os) {
    os << "vertices " << r.vertices.size() << '\n';
    for (const State& v : r.vertices) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << detail::fmt17(v[i]);
        os << '\n';
    }
    os << "edges " << r.edges.size() << '\n';
    for (const auto& [i, j, c] : r.edges) os << i << ' ' << j << ' ' << detail::fmt17(c) << '\n';
}

}  // namespace dispertio
