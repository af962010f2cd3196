#pragma once

// Ordered deterministic sample sets with generator provenance, plus the
// text file format. Round-trips are bit-exact (17 significant digits).

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "steer.hpp"

namespace dispertio {

struct SampleSet {
    SpaceTopology topology;
    SteerKind steer;
    std::vector<State> samples;
    std::string generator;                   // dispertio | halton | iid:<seed> | sukharev
    std::vector<double> prefix_dispersion;   // d after each prefix, when recorded

    std::size_t size() const { return samples.size(); }

    SampleSet prefix(std::size_t n) const {
        SampleSet p = *this;
        if (n < p.samples.size()) p.samples.resize(n);
        if (n < p.prefix_dispersion.size()) p.prefix_dispersion.resize(n);
        return p;
    }
};

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_sample_set(std::ostream& os, const SampleSet& s) {
    os << "dispertio-set v1\n";
    os << "space " << s.topology.dims();
    for (std::size_t i = 0; i < s.topology.dims(); ++i) {
        os << ' ' << detail::fmt17(s.topology.lower[i]) << ' ' << detail::fmt17(s.topology.upper[i])
           << ' ' << (s.topology.identified[i] ? 1 : 0) << ' '
           << detail::fmt17(s.topology.weights[i]);
    }
    os << '\n';
    if (s.steer.is_rs())
        os << "steer reeds-shepp " << detail::fmt17(s.steer.rho) << '\n';
    else
        os << "steer euclidean\n";
    os << "generator " << s.generator << '\n';
    os << "count " << s.samples.size() << '\n';
    for (const State& x : s.samples) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) os << ' ';
            os << detail::fmt17(x[i]);
        }
        os << '\n';
    }
}

inline SampleSet read_sample_set(std::istream& is) {
    SampleSet s;
    std::string line;
    if (!std::getline(is, line) || line != "dispertio-set v1")
        throw std::runtime_error("sample set: bad magic line");

    if (!std::getline(is, line)) throw std::runtime_error("sample set: missing space line");
    {
        std::istringstream ls(line);
        std::string tag;
        std::size_t d = 0;
        ls >> tag >> d;
        if (tag != "space" || d == 0) throw std::runtime_error("sample set: bad space line");
        s.topology.lower.resize(d);
        s.topology.upper.resize(d);
        s.topology.identified.resize(d);
        s.topology.weights.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            int ident = 0;
            if (!(ls >> s.topology.lower[i] >> s.topology.upper[i] >> ident >>
                  s.topology.weights[i]))
                throw std::runtime_error("sample set: bad space descriptor");
            s.topology.identified[i] = ident != 0;
        }
        s.topology.validate();
    }

    if (!std::getline(is, line)) throw std::runtime_error("sample set: missing steer line");
    {
        std::istringstream ls(line);
        std::string tag, kind;
        ls >> tag >> kind;
        if (tag != "steer") throw std::runtime_error("sample set: bad steer line");
        if (kind == "euclidean") {
            s.steer = SteerKind::euclidean();
        } else if (kind == "reeds-shepp") {
            double rho = 0;
            if (!(ls >> rho)) throw std::runtime_error("sample set: missing rho");
            s.steer = SteerKind::reeds_shepp(rho);
        } else {
            throw std::runtime_error("sample set: unknown steer kind " + kind);
        }
    }

    if (!std::getline(is, line) || line.rfind("generator ", 0) != 0)
        throw std::runtime_error("sample set: missing generator line");
    s.generator = line.substr(10);

    if (!std::getline(is, line) || line.rfind("count ", 0) != 0)
        throw std::runtime_error("sample set: missing count line");
    const std::size_t n = std::stoull(line.substr(6));

    s.samples.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::getline(is, line)) throw std::runtime_error("sample set: truncated samples");
        std::istringstream ls(line);
        State x(s.topology.dims());
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!(ls >> x[i])) throw std::runtime_error("sample set: bad sample line");
        s.samples.push_back(std::move(x));
    }
    return s;
}

}  // namespace dispertio
