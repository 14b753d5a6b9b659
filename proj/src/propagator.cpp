#include "qwave/propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qwave/gates.hpp"

namespace qwave {

namespace {

void check_grid(const StateVector& state, const std::string& reg, const GridSpec& grid,
                const PotentialSpec& potential) {
    if (state.layout.width(reg) != grid.l) {
        throw std::invalid_argument("register '" + reg + "' width does not match the grid");
    }
    if (potential.values.size() != grid.n) {
        throw std::invalid_argument("potential table length does not match the grid");
    }
    if (!(grid.dt > 0.0)) throw std::invalid_argument("grid has no derived dt; use GridSpec::create");
}

/// e^{+i pi A (v^2 mod 2N) / N} for every register value v. Reducing mod 2N
/// in integers keeps the phase exactly periodic under v -> v + N and avoids
/// large-argument trig.
std::vector<Complex> quadratic_phases(const GridSpec& grid) {
    std::vector<Complex> f(grid.n);
    const std::uint64_t two_n = 2 * grid.n;
    for (std::uint64_t v = 0; v < grid.n; ++v) {
        std::uint64_t q = (v * v) % two_n;
        std::uint64_t aq = (static_cast<std::uint64_t>(grid.stride_a) * q) % two_n;
        f[v] = std::polar(1.0, std::numbers::pi * static_cast<double>(aq) /
                                   static_cast<double>(grid.n));
    }
    return f;
}

}  // namespace

void trotter_step(StateVector& state, const std::string& reg, const GridSpec& grid,
                  const PotentialSpec& potential) {
    check_grid(state, reg, grid, potential);
    std::vector<Complex> quad = quadratic_phases(grid);

    scale_amplitudes(state, [&](std::uint64_t g) { return quad[state.layout.extract(reg, g)]; });

    apply_qft(state, reg, Direction::inverse);
    if (grid.stride_a != 1) {
        const std::uint64_t a = static_cast<std::uint64_t>(grid.stride_a);
        const std::uint64_t mask = grid.n - 1;
        gather_register(state, reg,
                        [a, mask](std::uint64_t v, std::uint64_t) { return (a * v) & mask; });
    }

    std::vector<Complex> post(grid.n);
    for (std::uint64_t v = 0; v < grid.n; ++v) {
        post[v] = quad[v] * std::polar(1.0, -potential.at(v) * grid.dt);
    }
    scale_amplitudes(state, [&](std::uint64_t g) { return post[state.layout.extract(reg, g)]; });
}

void evolve(StateVector& state, std::span<const std::string> registers, const GridSpec& grid,
            const PotentialSpec& potential, std::span<const CouplingSpec> couplings, int steps) {
    if (steps < 0) throw std::invalid_argument("evolve: negative step count");
    for (const CouplingSpec& c : couplings) {
        if (c.registers.size() != static_cast<std::size_t>(c.table.arity)) {
            throw std::invalid_argument("coupling arity does not match its register list");
        }
    }
    for (int s = 0; s < steps; ++s) {
        for (const std::string& reg : registers) {
            trotter_step(state, reg, grid, potential);
        }
        for (const CouplingSpec& c : couplings) {
            apply_phase_direct(state, c.registers, c.table);
        }
    }
}

CouplingSpec quadratic_coupling(const GridSpec& grid, const std::string& reg_a,
                                const std::string& reg_b, double kappa) {
    CouplingSpec c;
    c.registers = {reg_a, reg_b};
    const std::uint64_t n = grid.n;
    c.table = PhaseTable::from_function(
        n * n, -grid.dt,
        [&](std::uint64_t idx) {
            double xa = grid.coordinate(idx % n);
            double xb = grid.coordinate(idx / n);
            return kappa * (xa - xb) * (xa - xb);
        },
        /*arity=*/2);
    return c;
}

}  // namespace qwave
