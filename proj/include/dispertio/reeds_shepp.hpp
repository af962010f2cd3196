#pragma once

// Closed-form Reeds-Shepp shortest paths for a unit turning radius.
// Word families follow the original optimal-path catalogue; candidates are
// enumerated in a fixed order and improved only on strictly smaller length,
// so equal-length ties always resolve to the earliest word.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

namespace dispertio::rs {

enum class Seg : char { None = 'N', Left = 'L', Straight = 'S', Right = 'R' };

/// One optimal word: up to five segments, each a turn or straight with a
/// signed arc length (negative = reverse gear). Lengths are in units of the
/// turning radius.
struct RsPath {
    std::array<Seg, 5> word{Seg::None, Seg::None, Seg::None, Seg::None, Seg::None};
    std::array<double, 5> seg{0, 0, 0, 0, 0};
    double total = std::numeric_limits<double>::infinity();

    std::size_t segments() const {
        std::size_t n = 0;
        while (n < 5 && word[n] != Seg::None) ++n;
        return n;
    }

    /// e.g. "L+R-L+" ('+' forward, '-' backward); empty for the null path.
    std::string name() const {
        std::string s;
        for (std::size_t i = 0; i < 5; ++i) {
            if (word[i] == Seg::None) break;
            s += static_cast<char>(word[i]);
            s += seg[i] < 0 ? '-' : '+';
        }
        return s;
    }
};

namespace detail {

inline double mod2pi(double x) {
    double v = std::fmod(x, 2.0 * M_PI);
    if (v < -M_PI)
        v += 2.0 * M_PI;
    else if (v > M_PI)
        v -= 2.0 * M_PI;
    return v;
}

inline void polar(double x, double y, double& r, double& th) {
    r = std::sqrt(x * x + y * y);
    th = std::atan2(y, x);
}

inline void tau_omega(double u, double v, double xi, double eta, double phi, double& tau,
                      double& omega) {
    const double delta = mod2pi(u - v);
    const double A = std::sin(u) - std::sin(delta);
    const double B = std::cos(u) - std::cos(delta) - 1.0;
    const double t1 = std::atan2(eta * A - xi * B, xi * A + eta * B);
    const double t2 = 2.0 * (std::cos(delta) - std::cos(v) - std::cos(u)) + 3.0;
    tau = (t2 < 0) ? mod2pi(t1 + M_PI) : mod2pi(t1);
    omega = mod2pi(tau - u + v - phi);
}

constexpr double kZero = 10.0 * std::numeric_limits<double>::epsilon();

// Acceptance tolerance for the sign constraints on segment lengths. Start
// and goal poses that sit exactly on a word-family boundary (pure straights,
// single arcs, states interpolated along an optimal path) produce parameters
// like v = -4e-15 from rounding inside atan2/mod2pi; rejecting those leaves
// only a much longer fallback word. A slightly negative parameter within
// this tolerance is treated as zero-feasible; the induced endpoint error is
// of the same magnitude and such segments are stripped from the result.
constexpr double kTol = 1e-10;

// Base solutions, each for the all-forward left-first variant; the caller
// applies timeflip / reflect / backwards transforms.

inline bool lp_sp_lp(double x, double y, double phi, double sphi, double cphi, double& t, double& u, double& v) {
    polar(x - sphi, y - 1.0 + cphi, u, t);
    if (t >= -kTol) {
        v = mod2pi(phi - t);
        if (v >= -kTol) return true;
    }
    return false;
}

inline bool lp_sp_rp(double x, double y, double phi, double sphi, double cphi, double& t, double& u, double& v) {
    double t1, u1;
    polar(x + sphi, y - 1.0 - cphi, u1, t1);
    u1 *= u1;
    if (u1 < 4.0) return false;
    u = std::sqrt(u1 - 4.0);
    t = mod2pi(t1 + std::atan2(2.0, u));
    v = mod2pi(t - phi);
    return t >= -kTol && v >= -kTol;
}

inline bool lp_rm_l(double x, double y, double phi, double sphi, double cphi, double& t, double& u, double& v) {
    double u1, theta;
    polar(x - sphi, y - 1.0 + cphi, u1, theta);
    if (u1 > 4.0) return false;
    u = -2.0 * std::asin(0.25 * u1);
    t = mod2pi(theta + 0.5 * u + M_PI);
    v = mod2pi(phi - t + u);
    return t >= -kTol && u <= kTol;
}

inline bool lp_rup_lum_rm(double x, double y, double phi, double sphi, double cphi, double& t, double& u, double& v) {
    const double xi = x + sphi, eta = y - 1.0 - cphi;
    const double rho = 0.25 * (2.0 + std::sqrt(xi * xi + eta * eta));
    if (rho > 1.0) return false;
    u = std::acos(rho);
    tau_omega(u, -u, xi, eta, phi, t, v);
    return t >= -kTol && v <= kTol;
}

inline bool lp_rum_lum_rp(double x, double y, double phi, double sphi, double cphi, double& t, double& u, double& v) {
    const double xi = x + sphi, eta = y - 1.0 - cphi;
    const double rho = (20.0 - xi * xi - eta * eta) / 16.0;
    if (rho < 0.0 || rho > 1.0) return false;
    u = -std::acos(rho);
    if (u < -0.5 * M_PI) return false;
    tau_omega(u, u, xi, eta, phi, t, v);
    return t >= -kTol && v >= -kTol;
}

inline bool lp_rm_sm_lm(double x, double y, double phi, double sphi, double cphi, double& t, double& u, double& v) {
    double rho, theta;
    polar(x - sphi, y - 1.0 + cphi, rho, theta);
    if (rho < 2.0) return false;
    const double r = std::sqrt(rho * rho - 4.0);
    u = 2.0 - r;
    t = mod2pi(theta + std::atan2(r, -2.0));
    v = mod2pi(phi - 0.5 * M_PI - t);
    return t >= -kTol && u <= kTol && v <= kTol;
}

inline bool lp_rm_sm_rm(double x, double y, double phi, double sphi, double cphi, double& t, double& u, double& v) {
    const double xi = x + sphi, eta = y - 1.0 - cphi;
    double rho, theta;
    polar(-eta, xi, rho, theta);
    if (rho < 2.0) return false;
    t = theta;
    u = 2.0 - rho;
    v = mod2pi(t + 0.5 * M_PI - phi);
    return t >= -kTol && u <= kTol && v <= kTol;
}

inline bool lp_rm_s_lm_rp(double x, double y, double phi, double sphi, double cphi, double& t, double& u, double& v) {
    const double xi = x + sphi, eta = y - 1.0 - cphi;
    double rho, theta;
    polar(xi, eta, rho, theta);
    (void)theta;
    if (rho < 2.0) return false;
    u = 4.0 - std::sqrt(rho * rho - 4.0);
    if (u > kTol) return false;
    t = mod2pi(std::atan2((4.0 - u) * xi - 2.0 * eta, -2.0 * xi + (u - 4.0) * eta));
    v = mod2pi(t - phi);
    return t >= -kTol && v >= -kTol;
}

struct Best {
    RsPath path;

    void offer(Seg a, Seg b, Seg c, double t, double u, double v) {
        const double L = std::abs(t) + std::abs(u) + std::abs(v);
        if (L < path.total) {
            path = RsPath{};
            path.word = {a, b, c, Seg::None, Seg::None};
            path.seg = {t, u, v, 0, 0};
            path.total = L;
        }
    }
    void offer4(Seg a, Seg b, Seg c, Seg d, double t, double u, double v, double w) {
        const double L = std::abs(t) + std::abs(u) + std::abs(v) + std::abs(w);
        if (L < path.total) {
            path = RsPath{};
            path.word = {a, b, c, d, Seg::None};
            path.seg = {t, u, v, w, 0};
            path.total = L;
        }
    }
    void offer5(Seg a, Seg b, Seg c, Seg d, Seg e, double t, double u, double v, double w,
                double x) {
        const double L = std::abs(t) + std::abs(u) + std::abs(v) + std::abs(w) + std::abs(x);
        if (L < path.total) {
            path.word = {a, b, c, d, e};
            path.seg = {t, u, v, w, x};
            path.total = L;
        }
    }
};

constexpr Seg L = Seg::Left;
constexpr Seg S = Seg::Straight;
constexpr Seg R = Seg::Right;

inline void csc(double x, double y, double phi, double sphi, double cphi, Best& best) {
    double t, u, v;
    if (lp_sp_lp(x, y, phi, sphi, cphi, t, u, v)) best.offer(L, S, L, t, u, v);
    if (lp_sp_lp(-x, y, -phi, -sphi, cphi, t, u, v)) best.offer(L, S, L, -t, -u, -v);       // timeflip
    if (lp_sp_lp(x, -y, -phi, -sphi, cphi, t, u, v)) best.offer(R, S, R, t, u, v);          // reflect
    if (lp_sp_lp(-x, -y, phi, sphi, cphi, t, u, v)) best.offer(R, S, R, -t, -u, -v);       // both
    if (lp_sp_rp(x, y, phi, sphi, cphi, t, u, v)) best.offer(L, S, R, t, u, v);
    if (lp_sp_rp(-x, y, -phi, -sphi, cphi, t, u, v)) best.offer(L, S, R, -t, -u, -v);
    if (lp_sp_rp(x, -y, -phi, -sphi, cphi, t, u, v)) best.offer(R, S, L, t, u, v);
    if (lp_sp_rp(-x, -y, phi, sphi, cphi, t, u, v)) best.offer(R, S, L, -t, -u, -v);
}

inline void ccc(double x, double y, double phi, double sphi, double cphi, Best& best) {
    double t, u, v;
    if (lp_rm_l(x, y, phi, sphi, cphi, t, u, v)) best.offer(L, R, L, t, u, v);
    if (lp_rm_l(-x, y, -phi, -sphi, cphi, t, u, v)) best.offer(L, R, L, -t, -u, -v);
    if (lp_rm_l(x, -y, -phi, -sphi, cphi, t, u, v)) best.offer(R, L, R, t, u, v);
    if (lp_rm_l(-x, -y, phi, sphi, cphi, t, u, v)) best.offer(R, L, R, -t, -u, -v);
    // backwards: solve for the reversed displacement, emit the word reversed
    const double xb = x * cphi + y * sphi;
    const double yb = x * sphi - y * cphi;
    if (lp_rm_l(xb, yb, phi, sphi, cphi, t, u, v)) best.offer(L, R, L, v, u, t);
    if (lp_rm_l(-xb, yb, -phi, -sphi, cphi, t, u, v)) best.offer(L, R, L, -v, -u, -t);
    if (lp_rm_l(xb, -yb, -phi, -sphi, cphi, t, u, v)) best.offer(R, L, R, v, u, t);
    if (lp_rm_l(-xb, -yb, phi, sphi, cphi, t, u, v)) best.offer(R, L, R, -v, -u, -t);
}

inline void cccc(double x, double y, double phi, double sphi, double cphi, Best& best) {
    double t, u, v;
    if (lp_rup_lum_rm(x, y, phi, sphi, cphi, t, u, v)) best.offer4(L, R, L, R, t, u, -u, v);
    if (lp_rup_lum_rm(-x, y, -phi, -sphi, cphi, t, u, v)) best.offer4(L, R, L, R, -t, -u, u, -v);
    if (lp_rup_lum_rm(x, -y, -phi, -sphi, cphi, t, u, v)) best.offer4(R, L, R, L, t, u, -u, v);
    if (lp_rup_lum_rm(-x, -y, phi, sphi, cphi, t, u, v)) best.offer4(R, L, R, L, -t, -u, u, -v);
    if (lp_rum_lum_rp(x, y, phi, sphi, cphi, t, u, v)) best.offer4(L, R, L, R, t, u, u, v);
    if (lp_rum_lum_rp(-x, y, -phi, -sphi, cphi, t, u, v)) best.offer4(L, R, L, R, -t, -u, -u, -v);
    if (lp_rum_lum_rp(x, -y, -phi, -sphi, cphi, t, u, v)) best.offer4(R, L, R, L, t, u, u, v);
    if (lp_rum_lum_rp(-x, -y, phi, sphi, cphi, t, u, v)) best.offer4(R, L, R, L, -t, -u, -u, -v);
}

inline void ccsc(double x, double y, double phi, double sphi, double cphi, Best& best) {
    constexpr double hp = 0.5 * M_PI;
    double t, u, v;
    if (lp_rm_sm_lm(x, y, phi, sphi, cphi, t, u, v)) best.offer4(L, R, S, L, t, -hp, u, v);
    if (lp_rm_sm_lm(-x, y, -phi, -sphi, cphi, t, u, v)) best.offer4(L, R, S, L, -t, hp, -u, -v);
    if (lp_rm_sm_lm(x, -y, -phi, -sphi, cphi, t, u, v)) best.offer4(R, L, S, R, t, -hp, u, v);
    if (lp_rm_sm_lm(-x, -y, phi, sphi, cphi, t, u, v)) best.offer4(R, L, S, R, -t, hp, -u, -v);
    if (lp_rm_sm_rm(x, y, phi, sphi, cphi, t, u, v)) best.offer4(L, R, S, R, t, -hp, u, v);
    if (lp_rm_sm_rm(-x, y, -phi, -sphi, cphi, t, u, v)) best.offer4(L, R, S, R, -t, hp, -u, -v);
    if (lp_rm_sm_rm(x, -y, -phi, -sphi, cphi, t, u, v)) best.offer4(R, L, S, L, t, -hp, u, v);
    if (lp_rm_sm_rm(-x, -y, phi, sphi, cphi, t, u, v)) best.offer4(R, L, S, L, -t, hp, -u, -v);
    const double xb = x * cphi + y * sphi;
    const double yb = x * sphi - y * cphi;
    if (lp_rm_sm_lm(xb, yb, phi, sphi, cphi, t, u, v)) best.offer4(L, S, R, L, v, u, -hp, t);
    if (lp_rm_sm_lm(-xb, yb, -phi, -sphi, cphi, t, u, v)) best.offer4(L, S, R, L, -v, -u, hp, -t);
    if (lp_rm_sm_lm(xb, -yb, -phi, -sphi, cphi, t, u, v)) best.offer4(R, S, L, R, v, u, -hp, t);
    if (lp_rm_sm_lm(-xb, -yb, phi, sphi, cphi, t, u, v)) best.offer4(R, S, L, R, -v, -u, hp, -t);
    if (lp_rm_sm_rm(xb, yb, phi, sphi, cphi, t, u, v)) best.offer4(R, S, R, L, v, u, -hp, t);
    if (lp_rm_sm_rm(-xb, yb, -phi, -sphi, cphi, t, u, v)) best.offer4(R, S, R, L, -v, -u, hp, -t);
    if (lp_rm_sm_rm(xb, -yb, -phi, -sphi, cphi, t, u, v)) best.offer4(L, S, L, R, v, u, -hp, t);
    if (lp_rm_sm_rm(-xb, -yb, phi, sphi, cphi, t, u, v)) best.offer4(L, S, L, R, -v, -u, hp, -t);
}

inline void ccscc(double x, double y, double phi, double sphi, double cphi, Best& best) {
    constexpr double hp = 0.5 * M_PI;
    double t, u, v;
    if (lp_rm_s_lm_rp(x, y, phi, sphi, cphi, t, u, v)) best.offer5(L, R, S, L, R, t, -hp, u, -hp, v);
    if (lp_rm_s_lm_rp(-x, y, -phi, -sphi, cphi, t, u, v)) best.offer5(L, R, S, L, R, -t, hp, -u, hp, -v);
    if (lp_rm_s_lm_rp(x, -y, -phi, -sphi, cphi, t, u, v)) best.offer5(R, L, S, R, L, t, -hp, u, -hp, v);
    if (lp_rm_s_lm_rp(-x, -y, phi, sphi, cphi, t, u, v)) best.offer5(R, L, S, R, L, -t, hp, -u, hp, -v);
}

}  // namespace detail

/// Shortest path from the origin pose to (x, y, phi), unit turning radius.
inline RsPath solve(double x, double y, double phi) {
    if (x == 0.0 && y == 0.0 && detail::mod2pi(phi) == 0.0) {
        RsPath null;
        null.total = 0.0;
        return null;
    }
    detail::Best best;
    const double sphi = std::sin(phi), cphi = std::cos(phi);
    detail::csc(x, y, phi, sphi, cphi, best);
    detail::ccc(x, y, phi, sphi, cphi, best);
    detail::cccc(x, y, phi, sphi, cphi, best);
    detail::ccsc(x, y, phi, sphi, cphi, best);
    detail::ccscc(x, y, phi, sphi, cphi, best);
    // drop degenerate segments (|len| <= kTol) so boundary-case words reduce
    // to their true shape, e.g. L(0) S L(0) becomes a single straight
    RsPath out;
    std::size_t n = 0;
    double total = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        if (best.path.word[i] == Seg::None) break;
        if (std::abs(best.path.seg[i]) <= detail::kTol) continue;
        out.word[n] = best.path.word[i];
        out.seg[n] = best.path.seg[i];
        total += std::abs(best.path.seg[i]);
        ++n;
    }
    out.total = total;
    return out;
}

/// Pose reached after driving arc length s (in radius units, s in [0, total])
/// along the path, starting from the origin pose.
inline void interpolate(const RsPath& p, double s, double& x, double& y, double& th) {
    x = y = th = 0.0;
    if (s < 0.0) s = 0.0;
    if (s > p.total) s = p.total;
    for (std::size_t i = 0; i < 5 && s > 0.0; ++i) {
        double v;
        if (p.seg[i] < 0.0) {
            v = std::max(-s, p.seg[i]);
            s += v;
        } else {
            v = std::min(s, p.seg[i]);
            s -= v;
        }
        const double phi = th;
        switch (p.word[i]) {
            case Seg::Left:
                x += std::sin(phi + v) - std::sin(phi);
                y += -std::cos(phi + v) + std::cos(phi);
                th = phi + v;
                break;
            case Seg::Right:
                x += -std::sin(phi - v) + std::sin(phi);
                y += std::cos(phi - v) - std::cos(phi);
                th = phi - v;
                break;
            case Seg::Straight:
                x += v * std::cos(phi);
                y += v * std::sin(phi);
                break;
            case Seg::None:
                break;
        }
    }
}

}  // namespace dispertio::rs
