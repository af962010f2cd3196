#pragma once

// Discretized configuration space holding the per-cell dispersion tensor:
// each cell stores the distance to the nearest of {space border, inserted
// sample}, maintained by flood-fill updates under the steer metric.

#include <cstdint>
#include <fstream>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "steer.hpp"

namespace dispertio {

enum class BorderMode { Analytic, BorderSamples, None };

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GridSaturated : std::runtime_error {
    GridSaturated() : std::runtime_error("dispersion grid saturated: all cell values are zero") {}
};

struct DispersionGrid {
    SpaceTopology topo;
    std::vector<std::size_t> resolution;  // cells per dimension
    std::vector<double> values;           // row-major, first dimension slowest
    BorderMode border_mode = BorderMode::None;
    bool border_initialized = false;

    // lazily computed flood-fill frontier margin (one metric cell step)
    mutable double cell_step_ = -1.0;

    std::size_t dims() const { return topo.dims(); }

    std::size_t cell_count() const {
        std::size_t n = 1;
        for (std::size_t r : resolution) n *= r;
        return n;
    }

    double cell_width(std::size_t i) const {
        return topo.width(i) / static_cast<double>(resolution[i]);
    }

    void coords_of(std::size_t lin, std::vector<std::size_t>& c) const {
        c.resize(dims());
        for (std::size_t i = dims(); i-- > 0;) {
            c[i] = lin % resolution[i];
            lin /= resolution[i];
        }
    }

    std::size_t index_of(const std::vector<std::size_t>& c) const {
        std::size_t lin = 0;
        for (std::size_t i = 0; i < dims(); ++i) lin = lin * resolution[i] + c[i];
        return lin;
    }

    State center(std::size_t lin) const {
        std::vector<std::size_t> c;
        coords_of(lin, c);
        State s(dims());
        for (std::size_t i = 0; i < dims(); ++i)
            s[i] = topo.lower[i] + (static_cast<double>(c[i]) + 0.5) * cell_width(i);
        return s;
    }

    /// Linear index of the cell containing the (normalized, in-bounds) state.
    std::size_t cell_of(const State& s) const {
        std::size_t lin = 0;
        for (std::size_t i = 0; i < dims(); ++i) {
            double f = (s[i] - topo.lower[i]) / cell_width(i);
            auto idx = static_cast<long long>(f);
            if (idx < 0) idx = 0;
            if (idx >= static_cast<long long>(resolution[i]))
                idx = static_cast<long long>(resolution[i]) - 1;
            lin = lin * resolution[i] + static_cast<std::size_t>(idx);
        }
        return lin;
    }

    bool is_boundary(const std::vector<std::size_t>& c) const {
        for (std::size_t i = 0; i < dims(); ++i)
            if (!topo.identified[i] && (c[i] == 0 || c[i] + 1 == resolution[i])) return true;
        return false;
    }
};

inline DispersionGrid build_grid(const SpaceTopology& t, std::vector<std::size_t> resolution) {
    t.validate();
    if (resolution.size() != t.dims())
        throw std::invalid_argument("build_grid: resolution dimension mismatch");
    for (std::size_t r : resolution)
        if (r < 2) throw std::invalid_argument("build_grid: need at least 2 cells per dimension");
    DispersionGrid g;
    g.topo = t;
    g.resolution = std::move(resolution);
    g.values.assign(g.cell_count(), kInf);
    return g;
}

/// Exact steer distances between cell centers, memoized over relative
/// translational offsets and absolute angular indices. Valid for metrics
/// invariant under translation in the non-identified dimensions (Euclidean,
/// Reeds-Shepp). Intended for the 3D Reeds-Shepp grids where repeated
/// closed-form solves dominate the runtime.
class CenterDistanceTable {
  public:
    CenterDistanceTable(const DispersionGrid& g, const SteerKind& k) {
        if (g.dims() != 3 || !k.is_rs())
            throw std::invalid_argument("CenterDistanceTable: built for 3D Reeds-Shepp grids");
        r0_ = g.resolution[0];
        r1_ = g.resolution[1];
        kk_ = g.resolution[2];
        n0_ = 2 * r0_ - 1;
        n1_ = 2 * r1_ - 1;
        data_.assign(n0_ * n1_ * kk_ * kk_, -1.0);
        const double h0 = g.cell_width(0), h1 = g.cell_width(1), h2 = g.cell_width(2);
        const double th0 = g.topo.lower[2] + 0.5 * h2;
        for (std::size_t dx = 0; dx < n0_; ++dx) {
            const double ox = (static_cast<double>(dx) - static_cast<double>(r0_ - 1)) * h0;
            for (std::size_t dy = 0; dy < n1_; ++dy) {
                const double oy = (static_cast<double>(dy) - static_cast<double>(r1_ - 1)) * h1;
                for (std::size_t a = 0; a < kk_; ++a) {
                    for (std::size_t b = 0; b < kk_; ++b) {
                        double& slot = at(dx, dy, a, b);
                        if (slot >= 0.0) continue;
                        const double ta = th0 + static_cast<double>(a) * h2;
                        const double tb = th0 + static_cast<double>(b) * h2;
                        const double c = std::cos(ta), s = std::sin(ta);
                        const double x = (c * ox + s * oy) / k.rho;
                        const double y = (-s * ox + c * oy) / k.rho;
                        const double d = k.rho * rs::solve(x, y, rs::detail::mod2pi(tb - ta)).total;
                        slot = d;
                        // dist(a,b) = dist(b,a): fill the reversed offset too
                        at(n0_ - 1 - dx, n1_ - 1 - dy, b, a) = d;
                        // reflection about the x-axis maps (y, theta) to
                        // (-y, -theta) and preserves the distance; heading
                        // centers are symmetric under negation, index a
                        // becomes kk-1-a
                        at(dx, n1_ - 1 - dy, kk_ - 1 - a, kk_ - 1 - b) = d;
                        at(n0_ - 1 - dx, dy, kk_ - 1 - b, kk_ - 1 - a) = d;
                    }
                }
            }
        }
    }

    /// Distance between the centers of cells ca and cb (grid coordinates).
    double operator()(const std::vector<std::size_t>& ca,
                      const std::vector<std::size_t>& cb) const {
        const std::size_t dx = r0_ - 1 + cb[0] - ca[0];
        const std::size_t dy = r1_ - 1 + cb[1] - ca[1];
        return data_[((dx * n1_ + dy) * kk_ + ca[2]) * kk_ + cb[2]];
    }

    /// Contiguous row of distances from heading a at offset (dx, dy) to all
    /// target headings; dx, dy are already shifted by resolution-1.
    const double* row(std::size_t dx, std::size_t dy, std::size_t a) const {
        return &data_[((dx * n1_ + dy) * kk_ + a) * kk_];
    }

  private:
    double& at(std::size_t dx, std::size_t dy, std::size_t a, std::size_t b) {
        return data_[((dx * n1_ + dy) * kk_ + a) * kk_ + b];
    }
    std::size_t r0_, r1_, kk_, n0_, n1_;
    std::vector<double> data_;
};

namespace detail {

/// Frontier margin for the flood fill: the largest steer distance between a
/// cell center and any of its (up to 3^D - 1) corner/face neighbors. For
/// Euclidean metrics this is the weighted cell diagonal; for Reeds-Shepp the
/// max is taken over every heading slice.
inline double metric_cell_step(const DispersionGrid& g, const SteerKind& k) {
    const std::size_t d = g.dims();
    std::vector<std::size_t> mid(d);
    for (std::size_t i = 0; i < d; ++i) mid[i] = g.resolution[i] / 2;
    std::vector<long long> off(d, -1);
    double worst = 0.0;
    for (;;) {
        bool all_zero = true;
        for (long long o : off)
            if (o != 0) all_zero = false;
        if (!all_zero) {
            const std::size_t headings =
                (k.is_rs() && d == 3) ? g.resolution[2] : 1;
            for (std::size_t h = 0; h < headings; ++h) {
                State a(d), b(d);
                for (std::size_t i = 0; i < d; ++i) {
                    a[i] = g.topo.lower[i] +
                           (static_cast<double>(mid[i]) + 0.5) * g.cell_width(i);
                    b[i] = a[i] + static_cast<double>(off[i]) * g.cell_width(i);
                }
                if (headings > 1) {
                    a[2] = g.topo.lower[2] + (static_cast<double>(h) + 0.5) * g.cell_width(2);
                    b[2] = a[2] + static_cast<double>(off[2]) * g.cell_width(2);
                }
                worst = std::max(worst, dist(normalize(a, g.topo), normalize(b, g.topo), k,
                                             g.topo));
            }
        }
        std::size_t i = 0;
        for (; i < d; ++i) {
            if (off[i] < 1) {
                ++off[i];
                break;
            }
            off[i] = -1;
        }
        if (i == d) break;
    }
    return worst;
}

inline double frontier_margin(const DispersionGrid& g, const SteerKind& k) {
    if (g.cell_step_ < 0.0) g.cell_step_ = metric_cell_step(g, k);
    return g.cell_step_;
}

}  // namespace detail

/// Lowers cell values towards dist(x, center), flood-filling face-adjacent
/// neighbors from x's cell while the candidate distance stays below the
/// stored value plus one metric cell step. Distances are always the exact
/// steer distance from x to the visited cell center, never accumulated.
/// Returns true iff some boundary-face cell was improved.
inline bool update_distance_matrix(DispersionGrid& g, const State& x, const SteerKind& k,
                                   const CenterDistanceTable* table = nullptr) {
    const State xn = normalize(x, g.topo);
    if (!contains(xn, g.topo))
        throw std::invalid_argument("update_distance_matrix: sample outside the space");
    const double margin = detail::frontier_margin(g, k);
    const std::size_t n = g.cell_count();
    const std::size_t d = g.dims();

    // the memo table applies only when x sits exactly on a cell center; for
    // off-center samples it still yields a triangle-inequality lower bound
    // dist(x, center(c)) >= table(xcell, c) - dist(x, center(xcell)) that can
    // prove "no improvement, no expansion" without the exact evaluation
    std::vector<std::size_t> xc;
    bool snapped = false;
    double slack = 0.0;
    if (table) {
        const std::size_t xcell = g.cell_of(xn);
        const State cc = g.center(xcell);
        snapped = true;
        for (std::size_t i = 0; i < d; ++i)
            if (cc[i] != xn[i]) snapped = false;
        g.coords_of(xcell, xc);
        if (!snapped) slack = dist(xn, cc, k, g.topo);
    }
    // covers the memo's last-bit deviation from a direct evaluation, so the
    // short circuit can never flip a decision the exact value would make
    constexpr double kLbSafety = 1e-9;

    std::vector<std::uint8_t> visited(n, 0);
    std::vector<std::size_t> queue;
    queue.reserve(1024);
    const std::size_t start = g.cell_of(xn);
    queue.push_back(start);
    visited[start] = 1;

    bool touched_border = false;
    std::vector<std::size_t> c, nb;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t cur = queue[head];
        g.coords_of(cur, c);
        const double stored = g.values[cur];
        double cand;
        if (snapped) {
            cand = (*table)(xc, c);
        } else {
            const State cc = g.center(cur);
            if (k.is_rs() &&
                dist_lower_bound(xn, cc, k, g.topo) - kLbSafety >= stored + margin)
                continue;
            if (table && (*table)(xc, c) - slack - kLbSafety >= stored + margin) continue;
            cand = dist(xn, cc, k, g.topo);
        }
        if (cand < stored) {
            g.values[cur] = cand;
            if (g.is_boundary(c)) touched_border = true;
        }
        if (cand < stored + margin) {
            for (std::size_t i = 0; i < d; ++i) {
                for (int s = -1; s <= 1; s += 2) {
                    nb = c;
                    if (s < 0) {
                        if (c[i] == 0) {
                            if (!g.topo.identified[i]) continue;
                            nb[i] = g.resolution[i] - 1;
                        } else {
                            nb[i] = c[i] - 1;
                        }
                    } else {
                        if (c[i] + 1 == g.resolution[i]) {
                            if (!g.topo.identified[i]) continue;
                            nb[i] = 0;
                        } else {
                            nb[i] = c[i] + 1;
                        }
                    }
                    const std::size_t lin = g.index_of(nb);
                    if (!visited[lin]) {
                        visited[lin] = 1;
                        queue.push_back(lin);
                    }
                }
            }
        }
    }
    return touched_border;
}

/// Initializes the tensor with the distance-to-border term.
inline void init_border(DispersionGrid& g, const SteerKind& k, BorderMode mode,
                        const CenterDistanceTable* table = nullptr) {
    g.border_mode = mode;
    switch (mode) {
        case BorderMode::Analytic: {
            if (k.is_rs())
                throw std::invalid_argument(
                    "init_border: analytic border requires a Euclidean steer");
            std::vector<std::size_t> c;
            for (std::size_t lin = 0; lin < g.cell_count(); ++lin) {
                g.coords_of(lin, c);
                double best = kInf;
                for (std::size_t i = 0; i < g.dims(); ++i) {
                    if (g.topo.identified[i]) continue;
                    const double x =
                        (static_cast<double>(c[i]) + 0.5) * g.cell_width(i);
                    const double wall = std::min(x, g.topo.width(i) - x);
                    best = std::min(best, g.topo.weights[i] * wall);
                }
                g.values[lin] = best;
            }
            break;
        }
        case BorderMode::BorderSamples: {
            std::vector<std::size_t> c, b;
            if (table && g.dims() == 3 && g.topo.identified[2] &&
                !g.topo.identified[0] && !g.topo.identified[1]) {
                // exhaustive min over boundary cells; pure memo lookups with
                // the innermost heading loop contiguous in both the tensor
                // and the memo
                const std::size_t r0 = g.resolution[0], r1 = g.resolution[1],
                                  kk = g.resolution[2];
                for (std::size_t bx = 0; bx < r0; ++bx) {
                    for (std::size_t by = 0; by < r1; ++by) {
                        if (bx != 0 && by != 0 && bx != r0 - 1 && by != r1 - 1)
                            continue;
                        for (std::size_t cx = 0; cx < r0; ++cx) {
                            const std::size_t dx = r0 - 1 + cx - bx;
                            for (std::size_t cy = 0; cy < r1; ++cy) {
                                const std::size_t dy = r1 - 1 + cy - by;
                                double* dst = &g.values[(cx * r1 + cy) * kk];
                                for (std::size_t bk = 0; bk < kk; ++bk) {
                                    const double* src = table->row(dx, dy, bk);
                                    for (std::size_t ck = 0; ck < kk; ++ck)
                                        if (src[ck] < dst[ck]) dst[ck] = src[ck];
                                }
                            }
                        }
                    }
                }
            } else if (table) {
                // exhaustive min over boundary cells; pure memo lookups
                for (std::size_t blin = 0; blin < g.cell_count(); ++blin) {
                    g.coords_of(blin, b);
                    if (!g.is_boundary(b)) continue;
                    for (std::size_t lin = 0; lin < g.cell_count(); ++lin) {
                        g.coords_of(lin, c);
                        const double d = (*table)(b, c);
                        if (d < g.values[lin]) g.values[lin] = d;
                    }
                }
            } else {
                for (std::size_t lin = 0; lin < g.cell_count(); ++lin) {
                    g.coords_of(lin, c);
                    if (g.is_boundary(c)) update_distance_matrix(g, g.center(lin), k, table);
                }
            }
            break;
        }
        case BorderMode::None:
            break;  // lazy border handling happens at generation time
    }
    g.border_initialized = true;
}

inline std::size_t argmax_index(const DispersionGrid& g) {
    const std::size_t n = g.cell_count();
    std::size_t best = 0;
    double bv = g.values[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (g.values[i] > bv) {
            bv = g.values[i];
            best = i;
        }
    }
    if (bv == 0.0) throw GridSaturated{};
    return best;
}

inline State argmax_cell(const DispersionGrid& g) { return g.center(argmax_index(g)); }

/// Flat binary tensor dump with a one-line text header.
inline void export_grid(const DispersionGrid& g, std::ostream& os) {
    os << "dispertio-grid v1 dims " << g.dims() << " resolution";
    for (std::size_t r : g.resolution) os << ' ' << r;
    os << " bounds";
    for (std::size_t i = 0; i < g.dims(); ++i) os << ' ' << g.topo.lower[i] << ' ' << g.topo.upper[i];
    os << '\n';
    os.write(reinterpret_cast<const char*>(g.values.data()),
             static_cast<std::streamsize>(g.values.size() * sizeof(double)));
}

}  // namespace dispertio
