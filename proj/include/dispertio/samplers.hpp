#pragma once

// Baseline generators: Halton sequence, seeded i.i.d. uniform, Sukharev grid.

#include <cstdint>
#include <random>
#include <string>

#include "sample_set.hpp"

namespace dispertio {

namespace detail {

inline unsigned nth_prime(std::size_t n) {
    static constexpr unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                          31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    if (n < sizeof(primes) / sizeof(primes[0])) return primes[n];
    throw std::invalid_argument("halton: dimension too high");
}

inline double radical_inverse(std::uint64_t index, unsigned base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (index > 0) {
        r += f * static_cast<double>(index % base);
        index /= base;
        f *= inv;
    }
    return r;
}

/// Uniform double in [0,1) from the top 53 bits of a mt19937_64 draw. This
/// mapping is fixed for the repository so that seeded sets are identical
/// across platforms and standard library versions.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Halton points scaled to the box; index starts at 1, dimension i uses the
/// i-th prime base. halton(n) is a prefix of halton(m) for n <= m.
inline SampleSet halton(std::size_t n, const SpaceTopology& t,
                        SteerKind steer = SteerKind::euclidean()) {
    t.validate();
    SampleSet s;
    s.topology = t;
    s.steer = steer;
    s.generator = "halton";
    s.samples.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        State x(t.dims());
        for (std::size_t i = 0; i < t.dims(); ++i)
            x[i] = t.lower[i] + t.width(i) * detail::radical_inverse(j, detail::nth_prime(i));
        s.samples.push_back(normalize(x, t));
    }
    return s;
}

inline SampleSet iid_uniform(std::size_t n, const SpaceTopology& t, std::uint64_t seed,
                             SteerKind steer = SteerKind::euclidean()) {
    t.validate();
    SampleSet s;
    s.topology = t;
    s.steer = steer;
    s.generator = "iid:" + std::to_string(seed);
    s.samples.reserve(n);
    std::mt19937_64 rng(seed);
    for (std::size_t j = 0; j < n; ++j) {
        State x(t.dims());
        for (std::size_t i = 0; i < t.dims(); ++i)
            x[i] = t.lower[i] + t.width(i) * detail::uniform01(rng);
        s.samples.push_back(normalize(x, t));
    }
    return s;
}

/// Centers of the uniform cells_per_dim^D partition, row-major order.
inline SampleSet sukharev(std::size_t cells_per_dim, const SpaceTopology& t,
                          SteerKind steer = SteerKind::euclidean()) {
    t.validate();
    if (cells_per_dim < 1) throw std::invalid_argument("sukharev: cells_per_dim must be >= 1");
    SampleSet s;
    s.topology = t;
    s.steer = steer;
    s.generator = "sukharev";
    const std::size_t d = t.dims();
    std::vector<std::size_t> c(d, 0);
    for (;;) {
        State x(d);
        for (std::size_t i = 0; i < d; ++i)
            x[i] = t.lower[i] +
                   t.width(i) * (static_cast<double>(c[i]) + 0.5) / static_cast<double>(cells_per_dim);
        s.samples.push_back(std::move(x));
        std::size_t i = d;
        bool done = true;
        while (i-- > 0) {
            if (++c[i] < cells_per_dim) {
                done = false;
                break;
            }
            c[i] = 0;
        }
        if (done) break;
    }
    return s;
}

}  // namespace dispertio
