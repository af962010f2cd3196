#pragma once

// Workspace obstacles: moving-ai occupancy maps, point-robot and kinematic
// chain collision checking, path checking via steer interpolation.

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "steer.hpp"

namespace dispertio {

/// 2D obstacle grid. Cell (col, row) covers
/// [col,col+1) x [row,row+1) * cell_size meters; row 0 is the first map row.
struct OccupancyMap {
    std::size_t width = 0;   // columns
    std::size_t height = 0;  // rows
    double cell_size = 1.0;  // meters per cell
    std::vector<std::uint8_t> passable;

    bool cell_passable(std::size_t col, std::size_t row) const {
        return passable[row * width + col] != 0;
    }

    /// False outside the map.
    bool point_passable(double x, double y) const {
        if (x < 0.0 || y < 0.0) return false;
        const auto col = static_cast<std::size_t>(x / cell_size);
        const auto row = static_cast<std::size_t>(y / cell_size);
        if (col >= width || row >= height) return false;
        return cell_passable(col, row);
    }

    bool point_inside(double x, double y) const {
        return x >= 0.0 && y >= 0.0 && x <= static_cast<double>(width) * cell_size &&
               y <= static_cast<double>(height) * cell_size;
    }

    static OccupancyMap free_map(std::size_t w, std::size_t h, double cell) {
        OccupancyMap m;
        m.width = w;
        m.height = h;
        m.cell_size = cell;
        m.passable.assign(w * h, 1);
        return m;
    }
};

/// Planar kinematic chain: six rigid links hinged in sequence from a fixed
/// base; joint angles are absolute-frame increments.
struct ChainModel {
    std::vector<double> link_lengths;  // 6 positive lengths, meters
    double base_x = 0.0;
    double base_y = 0.0;

    void validate() const {
        if (link_lengths.size() != 6)
            throw std::invalid_argument("ChainModel: expected 6 links");
        for (double l : link_lengths)
            if (!(l > 0.0)) throw std::invalid_argument("ChainModel: link lengths must be positive");
    }

    /// Joint positions (7 points, base first) for the given joint angles;
    /// each angle is relative to the previous link direction.
    std::vector<std::pair<double, double>> forward(const State& angles) const {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(7);
        double x = base_x, y = base_y, heading = 0.0;
        pts.emplace_back(x, y);
        for (std::size_t i = 0; i < link_lengths.size(); ++i) {
            heading += angles[i];
            x += link_lengths[i] * std::cos(heading);
            y += link_lengths[i] * std::sin(heading);
            pts.emplace_back(x, y);
        }
        return pts;
    }
};

inline OccupancyMap parse_map(const std::string& text, double cell_size = 1.0) {
    std::istringstream is(text);
    std::string line;
    auto expect = [&](const char* prefix) -> std::string {
        if (!std::getline(is, line)) throw std::runtime_error("map: truncated header");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind(prefix, 0) != 0)
            throw std::runtime_error(std::string("map: expected '") + prefix + "', got '" + line +
                                     "'");
        return line.substr(std::string(prefix).size());
    };
    expect("type octile");
    const long long h = std::stoll(expect("height "));
    const long long w = std::stoll(expect("width "));
    if (h <= 0 || w <= 0) throw std::runtime_error("map: non-positive dimensions");
    expect("map");

    OccupancyMap m;
    m.width = static_cast<std::size_t>(w);
    m.height = static_cast<std::size_t>(h);
    m.cell_size = cell_size;
    m.passable.reserve(m.width * m.height);
    for (long long r = 0; r < h; ++r) {
        if (!std::getline(is, line)) throw std::runtime_error("map: truncated rows");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.size() != m.width) throw std::runtime_error("map: ragged row");
        for (char ch : line) {
            switch (ch) {
                case '.':
                case 'G':
                    m.passable.push_back(1);
                    break;
                case '@':
                case 'O':
                case 'T':
                    m.passable.push_back(0);
                    break;
                default:
                    throw std::runtime_error(std::string("map: unknown cell char '") + ch + "'");
            }
        }
    }
    return m;
}

/// Canonical text form: passable cells as '.', blocked as '@'.
inline std::string serialize_map(const OccupancyMap& m) {
    std::string out = "type octile\nheight " + std::to_string(m.height) + "\nwidth " +
                      std::to_string(m.width) + "\nmap\n";
    for (std::size_t r = 0; r < m.height; ++r) {
        for (std::size_t c = 0; c < m.width; ++c) out += m.cell_passable(c, r) ? '.' : '@';
        out += '\n';
    }
    return out;
}

namespace detail {

/// Every point of the segment, rasterized at half-cell steps, passable.
inline bool segment_clear(const OccupancyMap& m, double x0, double y0, double x1, double y1) {
    const double dx = x1 - x0, dy = y1 - y0;
    const double len = std::sqrt(dx * dx + dy * dy);
    const auto steps = static_cast<std::size_t>(std::ceil(len / (0.5 * m.cell_size)));
    for (std::size_t j = 0; j <= steps; ++j) {
        const double f = steps ? static_cast<double>(j) / static_cast<double>(steps) : 0.0;
        if (!m.point_passable(x0 + f * dx, y0 + f * dy)) return false;
    }
    return true;
}

}  // namespace detail

/// Point robots (Euclidean 2D, Reeds-Shepp position): the containing cell is
/// passable; heading is ignored. Chain states: every link segment clear.
inline bool state_free(const State& s, const OccupancyMap& m, const SteerKind& k,
                       const std::optional<ChainModel>& chain = std::nullopt) {
    (void)k;
    if (chain) {
        const auto pts = chain->forward(s);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (!detail::segment_clear(m, pts[i].first, pts[i].second, pts[i + 1].first,
                                       pts[i + 1].second))
                return false;
        return true;
    }
    if (!m.point_inside(s[0], s[1]))
        throw std::out_of_range("state_free: position outside the map");
    return m.point_passable(s[0], s[1]);
}

/// Interpolates the optimal steer connection at the given arc-length step
/// and requires every sampled state to be free. States leaving the map are
/// treated as collisions, not errors.
inline bool path_free(const State& a, const State& b, const OccupancyMap& m, const SteerKind& k,
                      const SpaceTopology& t, double step,
                      const std::optional<ChainModel>& chain = std::nullopt) {
    const PathSample p = steer_path(a, b, k, t, step);
    for (const State& s : p.states) {
        if (chain) {
            if (!state_free(s, m, k, chain)) return false;
        } else {
            if (!m.point_passable(s[0], s[1])) return false;
        }
    }
    return true;
}

}  // namespace dispertio
