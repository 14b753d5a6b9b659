#include "qwave/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace qwave {

GridSpec GridSpec::create(int l, double dx, double mass, int a) {
    if (l < 1 || l > 26) throw std::invalid_argument("grid: l must be in 1..26");
    if (!(dx > 0.0)) throw std::invalid_argument("grid: dx must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("grid: mass must be positive");
    if (a < 1) throw std::invalid_argument("grid: A must be a positive integer");
    if (a % 2 == 0) {
        throw std::invalid_argument(
            "grid: A must be odd; even A shares a factor with N = 2^l and the "
            "one-step kernel is not unitary");
    }
    GridSpec g;
    g.l = l;
    g.n = std::uint64_t{1} << l;
    g.dx = dx;
    g.mass = mass;
    g.stride_a = a;
    g.dt = mass * dx * dx * static_cast<double>(g.n) / (2.0 * std::numbers::pi * a);
    return g;
}

PotentialSpec PotentialSpec::free_particle(const GridSpec& grid) {
    return PotentialSpec{std::vector<double>(grid.n, 0.0), "free"};
}

PotentialSpec PotentialSpec::harmonic(const GridSpec& grid, double omega) {
    PotentialSpec p;
    p.values.resize(grid.n);
    for (std::uint64_t i = 0; i < grid.n; ++i) {
        double d = grid.centered_coordinate(i);
        p.values[i] = 0.5 * grid.mass * omega * omega * d * d;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "harmonic omega=%.17g", omega);
    p.provenance = buf;
    return p;
}

PotentialSpec PotentialSpec::square_well(const GridSpec& grid, double depth, double width) {
    PotentialSpec p;
    p.values.resize(grid.n);
    for (std::uint64_t i = 0; i < grid.n; ++i) {
        double d = grid.centered_coordinate(i);
        p.values[i] = (std::abs(d) <= width / 2.0) ? -depth : 0.0;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "square_well depth=%.17g width=%.17g", depth, width);
    p.provenance = buf;
    return p;
}

PotentialSpec PotentialSpec::from_file(const GridSpec& grid, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open potential file '" + path + "'");
    PotentialSpec p;
    p.values.assign(grid.n, 0.0);
    p.provenance = "file " + path;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        unsigned long long idx;
        double v;
        if (std::sscanf(line.c_str(), "%llu,%lf", &idx, &v) != 2) {
            throw std::runtime_error("potential file: bad line '" + line + "'");
        }
        if (idx >= grid.n) throw std::runtime_error("potential file: index out of range");
        if (!std::isfinite(v)) throw std::runtime_error("potential file: non-finite value");
        p.values[idx] = v;
    }
    return p;
}

}  // namespace qwave
