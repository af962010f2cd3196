#pragma once

// The greedy dispersion-optimizing generator and the grid-based dispersion
// measurement of arbitrary sample sets.

#include "grid.hpp"
#include "sample_set.hpp"

namespace dispertio {

namespace detail {

inline double max_value(const DispersionGrid& g) {
    double m = 0.0;
    for (double v : g.values) m = std::max(m, v);
    return m;
}

}  // namespace detail

/// Greedily places n samples at the cell center currently maximizing the
/// dispersion tensor. In lazy border mode (border_mode None) a candidate
/// whose update would improve a boundary cell is replaced by virtual
/// insertions of every improved boundary cell, and the argmax is retried.
/// Samples are snapped to cell centers; prefix dispersions are recorded.
inline SampleSet generate(std::size_t n, DispersionGrid& g, const SteerKind& k,
                          const CenterDistanceTable* table = nullptr) {
    if (!g.border_initialized)
        throw std::invalid_argument("generate: grid border not initialized");
    if (n >= g.cell_count())
        throw std::invalid_argument("generate: n must be below the number of grid cells");

    SampleSet out;
    out.topology = g.topo;
    out.steer = k;
    out.generator = "dispertio";
    out.samples.reserve(n);
    out.prefix_dispersion.reserve(n);

    const bool lazy = g.border_mode == BorderMode::None;
    std::vector<std::size_t> boundary;
    if (lazy) {
        std::vector<std::size_t> c;
        for (std::size_t lin = 0; lin < g.cell_count(); ++lin) {
            g.coords_of(lin, c);
            if (g.is_boundary(c)) boundary.push_back(lin);
        }
    }

    while (out.samples.size() < n) {
        const std::size_t idx = argmax_index(g);  // throws GridSaturated when exhausted
        const State x = g.center(idx);

        if (lazy && !boundary.empty()) {
            // virtual border pass: each improved boundary cell becomes a
            // border sample; it is never improvable again (value drops to 0)
            bool deferred = false;
            for (std::size_t b : boundary) {
                if (g.values[b] > 0.0 && dist(x, g.center(b), k, g.topo) < g.values[b]) {
                    update_distance_matrix(g, g.center(b), k, table);
                    deferred = true;
                }
            }
            // a processed border cell sits at value 0 and can never be
            // improved again; stop rescanning it
            std::erase_if(boundary, [&](std::size_t b) { return g.values[b] == 0.0; });
            if (deferred) continue;
        }

        update_distance_matrix(g, x, k, table);
        out.samples.push_back(x);
        out.prefix_dispersion.push_back(detail::max_value(g));
    }
    return out;
}

/// Grid approximation of the constrained dispersion: the max over cells of
/// min(border term, distance to the nearest sample). The grid must be
/// border-initialized; it is not modified.
inline double measure_dispersion(const SampleSet& s, const DispersionGrid& g, const SteerKind& k,
                                 const CenterDistanceTable* table = nullptr) {
    if (!g.border_initialized)
        throw std::invalid_argument("measure_dispersion: grid border not initialized");
    DispersionGrid work = g;
    for (const State& x : s.samples) update_distance_matrix(work, x, k, table);
    return detail::max_value(work);
}

}  // namespace dispertio
