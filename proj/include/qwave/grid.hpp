#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qwave {

/// Spatial discretization of one degree of freedom (hbar = 1 throughout).
///
/// The time step is always derived, never chosen: dt = m dx^2 N / (2 pi A),
/// so m dx^2/dt = A 2pi/N holds exactly by construction. A must be a positive
/// odd integer: even A shares a factor with N = 2^l, and the resulting
/// one-step kernel is not unitary (the stride map n -> A n mod N stops being
/// a bijection).
struct GridSpec {
    int l = 0;
    std::uint64_t n = 0;  // N = 2^l
    double dx = 0.0;
    double dt = 0.0;
    double mass = 0.0;
    int stride_a = 1;  // the integer A

    static GridSpec create(int l, double dx, double mass, int a);

    double coordinate(std::uint64_t idx) const { return static_cast<double>(idx) * dx; }
    /// Displacement from the grid center, x(n) = (n - N/2) dx.
    double centered_coordinate(std::uint64_t idx) const {
        return (static_cast<double>(idx) - static_cast<double>(n) / 2.0) * dx;
    }
    double box_length() const { return static_cast<double>(n) * dx; }
};

/// Potential energy sampled on the grid, implicitly periodic with period N.
struct PotentialSpec {
    std::vector<double> values;
    std::string provenance;  // echoed into run configs

    double at(std::uint64_t idx) const { return values[idx & (values.size() - 1)]; }

    static PotentialSpec free_particle(const GridSpec& grid);
    /// V(x) = (1/2) m omega^2 (x - x_c)^2 centered at x_c = (N/2) dx.
    static PotentialSpec harmonic(const GridSpec& grid, double omega);
    /// Well of the given depth (V = -depth inside |x - x_c| <= width/2).
    static PotentialSpec square_well(const GridSpec& grid, double depth, double width);
    /// One `index,value` line per grid point.
    static PotentialSpec from_file(const GridSpec& grid, const std::string& path);
};

}  // namespace qwave
