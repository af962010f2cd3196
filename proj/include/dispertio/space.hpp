#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dispertio {

/// A configuration is a plain coordinate tuple; meters for translational
/// dimensions, radians for angular ones. Topology is passed explicitly.
using State = std::vector<double>;

/// Box configuration space with optional per-dimension identification
/// (wrap-around) and positive metric weights.
struct SpaceTopology {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<bool> identified;
    std::vector<double> weights;

    std::size_t dims() const { return lower.size(); }

    double width(std::size_t i) const { return upper[i] - lower[i]; }

    void validate() const {
        const std::size_t d = dims();
        if (d == 0 || upper.size() != d || identified.size() != d || weights.size() != d)
            throw std::invalid_argument("SpaceTopology: inconsistent dimension counts");
        for (std::size_t i = 0; i < d; ++i) {
            if (!(lower[i] < upper[i]))
                throw std::invalid_argument("SpaceTopology: lower must be < upper");
            if (!(weights[i] > 0.0))
                throw std::invalid_argument("SpaceTopology: weights must be positive");
        }
    }

    static SpaceTopology box(std::vector<double> lo, std::vector<double> hi) {
        SpaceTopology t;
        t.lower = std::move(lo);
        t.upper = std::move(hi);
        t.identified.assign(t.lower.size(), false);
        t.weights.assign(t.lower.size(), 1.0);
        t.validate();
        return t;
    }

    /// Unit hypercube [0,1]^d.
    static SpaceTopology unit(std::size_t d) {
        return box(std::vector<double>(d, 0.0), std::vector<double>(d, 1.0));
    }

    /// [0,side]^2 x [-pi,pi) with identified heading, the Reeds-Shepp space.
    static SpaceTopology reeds_shepp_square(double side) {
        SpaceTopology t;
        t.lower = {0.0, 0.0, -M_PI};
        t.upper = {side, side, M_PI};
        t.identified = {false, false, true};
        t.weights = {1.0, 1.0, 1.0};
        t.validate();
        return t;
    }

    /// Fully identified joint space [-pi,pi)^d.
    static SpaceTopology torus(std::size_t d) {
        SpaceTopology t;
        t.lower.assign(d, -M_PI);
        t.upper.assign(d, M_PI);
        t.identified.assign(d, true);
        t.weights.assign(d, 1.0);
        t.validate();
        return t;
    }
};

/// Wraps v into the canonical half-open interval [lo, lo + period).
inline double wrap_into(double v, double lo, double period) {
    double r = std::fmod(v - lo, period);
    if (r < 0.0) r += period;
    // fmod can land exactly on the period for values just below lo
    if (r >= period) r -= period;
    return lo + r;
}

inline State normalize(const State& s, const SpaceTopology& t) {
    if (s.size() != t.dims())
        throw std::invalid_argument("normalize: state dimension mismatch");
    State out = s;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (t.identified[i]) out[i] = wrap_into(s[i], t.lower[i], t.width(i));
    return out;
}

/// True iff every non-identified coordinate lies inside its bounds.
/// Identified dimensions have no border and never fail.
inline bool contains(const State& s, const SpaceTopology& t) {
    if (s.size() != t.dims())
        throw std::invalid_argument("contains: state dimension mismatch");
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!t.identified[i] && (s[i] < t.lower[i] || s[i] > t.upper[i])) return false;
    return true;
}

/// Signed coordinate difference b[i] - a[i], shortest way around for
/// identified dimensions.
inline double coord_delta(double a, double b, const SpaceTopology& t, std::size_t i) {
    double d = b - a;
    if (t.identified[i]) {
        const double w = t.width(i);
        d = std::fmod(d, w);
        if (d > 0.5 * w) d -= w;
        if (d < -0.5 * w) d += w;
    }
    return d;
}

}  // namespace dispertio
