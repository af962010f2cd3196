#pragma once

// Optimal symmetric steer functions: weighted Euclidean straight lines and
// Reeds-Shepp car paths. Both provide the exact metric `dist` and uniform
// arc-length path sampling.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "reeds_shepp.hpp"
#include "space.hpp"

namespace dispertio {

struct SteerKind {
    enum class Type { Euclidean, ReedsShepp };
    Type type = Type::Euclidean;
    double rho = 1.0;  // minimum turning radius, meters (ReedsShepp only)

    static SteerKind euclidean() { return SteerKind{Type::Euclidean, 1.0}; }
    static SteerKind reeds_shepp(double rho) {
        if (!(rho > 0.0)) throw std::invalid_argument("SteerKind: rho must be positive");
        return SteerKind{Type::ReedsShepp, rho};
    }
    bool is_rs() const { return type == Type::ReedsShepp; }
};

struct PathSample {
    std::vector<State> states;
    double length = 0.0;
};

namespace detail {

inline double euclid_dist(const State& a, const State& b, const SpaceTopology& t) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.dims(); ++i) {
        const double d = t.weights[i] * coord_delta(a[i], b[i], t, i);
        s += d * d;
    }
    return std::sqrt(s);
}

/// Relative pose of b in a's frame, scaled by 1/rho.
inline void rs_relative(const State& a, const State& b, double rho, double& x, double& y,
                        double& phi) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double c = std::cos(a[2]), s = std::sin(a[2]);
    x = (c * dx + s * dy) / rho;
    y = (-s * dx + c * dy) / rho;
    phi = rs::detail::mod2pi(b[2] - a[2]);
}

}  // namespace detail

inline double dist(const State& a, const State& b, const SteerKind& k, const SpaceTopology& t) {
    if (a.size() != t.dims() || b.size() != t.dims())
        throw std::invalid_argument("dist: state dimension mismatch");
    if (k.type == SteerKind::Type::Euclidean) return detail::euclid_dist(a, b, t);
    double x, y, phi;
    detail::rs_relative(a, b, k.rho, x, y, phi);
    return k.rho * rs::solve(x, y, phi).total;
}

/// Cheap lower bound on dist; exact for Euclidean. Used for metric pruning.
inline double dist_lower_bound(const State& a, const State& b, const SteerKind& k,
                               const SpaceTopology& t) {
    if (k.type == SteerKind::Type::Euclidean) return detail::euclid_dist(a, b, t);
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double pos = std::sqrt(dx * dx + dy * dy);
    const double turn = k.rho * std::abs(coord_delta(a[2], b[2], t, 2));
    return std::max(pos, turn);
}

/// Optimal Reeds-Shepp word from a to b (unit-radius segment lengths scaled
/// by rho on output).
inline rs::RsPath reeds_shepp_solve(const State& a, const State& b, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("reeds_shepp_solve: rho must be positive");
    double x, y, phi;
    detail::rs_relative(a, b, rho, x, y, phi);
    rs::RsPath p = rs::solve(x, y, phi);
    for (auto& s : p.seg) s *= rho;
    p.total *= rho;
    return p;
}

/// Uniform arc-length sampling of the optimal connection; endpoints included.
inline PathSample steer_path(const State& a, const State& b, const SteerKind& k,
                             const SpaceTopology& t, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("steer_path: step must be positive");
    PathSample out;
    const State an = normalize(a, t), bn = normalize(b, t);

    if (k.type == SteerKind::Type::Euclidean) {
        out.length = detail::euclid_dist(an, bn, t);
        if (out.length == 0.0) {
            out.states.push_back(an);
            return out;
        }
        const std::size_t m = static_cast<std::size_t>(std::ceil(out.length / step));
        for (std::size_t j = 0; j <= m; ++j) {
            const double f = static_cast<double>(j) / static_cast<double>(m);
            State s(t.dims());
            for (std::size_t i = 0; i < t.dims(); ++i)
                s[i] = an[i] + f * coord_delta(an[i], bn[i], t, i);
            out.states.push_back(normalize(s, t));
        }
        return out;
    }

    double x, y, phi;
    detail::rs_relative(an, bn, k.rho, x, y, phi);
    const rs::RsPath p = rs::solve(x, y, phi);
    out.length = k.rho * p.total;
    if (out.length == 0.0) {
        out.states.push_back(an);
        return out;
    }
    const std::size_t m = static_cast<std::size_t>(std::ceil(out.length / step));
    const double c = std::cos(an[2]), s = std::sin(an[2]);
    for (std::size_t j = 0; j <= m; ++j) {
        const double arc = p.total * static_cast<double>(j) / static_cast<double>(m);
        double px, py, pth;
        rs::interpolate(p, arc, px, py, pth);
        State st{an[0] + k.rho * (c * px - s * py), an[1] + k.rho * (s * px + c * py),
                 an[2] + pth};
        out.states.push_back(normalize(st, t));
    }
    // land exactly on the goal, interpolation leaves ~1e-12 residue
    out.states.back() = bn;
    return out;
}

}  // namespace dispertio
