#include "qwave/cooling.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qwave/gates.hpp"
#include "qwave/oracle.hpp"
#include "qwave/propagator.hpp"
#include "qwave/rng.hpp"

namespace qwave {

double BathSpec::gap(int level) const { return base_gap * std::ldexp(1.0, -level); }

void BathSpec::validate() const {
    if (n_levels < 1) throw std::invalid_argument("bath: need at least one level");
    if (n_levels > 4) throw std::invalid_argument("bath: capped at 4 qubits");
    if (coupling < 0.0) throw std::invalid_argument("bath: coupling must be non-negative");
    if (reset_period < 1) throw std::invalid_argument("bath: reset period must be >= 1");
}

double ramp_value(const BathSpec& bath, int cycle, int total_cycles) {
    switch (bath.ramp) {
        case RampKind::constant:
            return bath.coupling;
        case RampKind::linear_to_zero:
            if (total_cycles <= 1) return bath.coupling;
            return bath.coupling *
                   (1.0 - static_cast<double>(cycle) / static_cast<double>(total_cycles - 1));
    }
    return bath.coupling;
}

void cooling_step(StateVector& state, const std::string& system_register, const GridSpec& grid,
                  const PotentialSpec& potential, const BathSpec& bath, double coupling_value) {
    bath.validate();
    if (state.layout.width(bath.bath_register) != bath.n_levels) {
        throw std::invalid_argument("bath register width does not match n_levels");
    }
    const int bath_off = state.layout.offset(bath.bath_register);

    // conditioned rotation angles per system value, one family per bath qubit
    std::vector<Mat2> rot(grid.n);
    const bool coupled = coupling_value != 0.0;
    if (coupled) {
        for (std::uint64_t v = 0; v < grid.n; ++v) {
            double theta = coupling_value * grid.dt * grid.centered_coordinate(v);
            double c = std::cos(theta);
            double s = std::sin(theta);
            rot[v] = Mat2{Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
        }
    }

    for (int step = 0; step < bath.reset_period; ++step) {
        trotter_step(state, system_register, grid, potential);
        for (int level = 0; level < bath.n_levels; ++level) {
            apply_gate(state, GateOp::phase(-bath.gap(level) * grid.dt, bath_off + level));
        }
        if (coupled) {
            for (int level = 0; level < bath.n_levels; ++level) {
                transform_qubit_pairs(
                    state, bath_off + level, [&](std::uint64_t i0) -> const Mat2* {
                        return &rot[state.layout.extract(system_register, i0)];
                    });
            }
        }
    }
}

std::vector<int> reset_bath(StateVector& state, const std::string& bath_register,
                            std::uint64_t seed) {
    MeasurementSample sample = measure_register(state, bath_register, seed);
    const int w = state.layout.width(bath_register);
    std::vector<int> outcomes(w);
    for (int j = 0; j < w; ++j) {
        outcomes[j] = static_cast<int>((sample.outcome >> j) & 1);
    }
    // re-initialize: flip the measured-1 qubits back to |0> (the projection
    // already collapsed the register to a single value)
    state = std::move(sample.post_state);
    if (sample.outcome != 0) {
        const std::uint64_t flip = sample.outcome;
        gather_register(state, bath_register,
                        [flip](std::uint64_t v, std::uint64_t) { return v ^ flip; });
    }
    return outcomes;
}

std::pair<StateVector, CoolingReport> run_cooling(const StateVector& initial,
                                                  const std::string& system_register,
                                                  const GridSpec& grid,
                                                  const PotentialSpec& potential,
                                                  const BathSpec& bath, int total_cycles,
                                                  std::uint64_t seed) {
    if (total_cycles < 0) throw std::invalid_argument("cooling: negative cycle count");
    StateVector state = initial;
    CoolingReport report;
    if (total_cycles == 0) return {std::move(state), std::move(report)};

    DenseOracle oracle(grid_hamiltonian(grid, potential));
    for (int cycle = 0; cycle < total_cycles; ++cycle) {
        double g = ramp_value(bath, cycle, total_cycles);
        cooling_step(state, system_register, grid, potential, bath, g);
        CoolingCycleRecord rec;
        rec.cycle = cycle;
        rec.coupling = g;
        rec.bath_outcomes = reset_bath(state, bath.bath_register, derive_seed(seed, cycle));
        // after the reset the bath is |0...0>, so the system block is pure
        rec.energy = oracle.energy_expectation(extract_register_block(state, system_register));
        report.cycles.push_back(std::move(rec));
    }
    return {std::move(state), std::move(report)};
}

std::string cooling_report_to_text(const CoolingReport& report) {
    std::ostringstream out;
    for (const CoolingCycleRecord& rec : report.cycles) {
        out << rec.cycle << ',' << format_double(rec.energy) << ','
            << format_double(rec.coupling) << ',';
        for (int b : rec.bath_outcomes) out << b;
        out << '\n';
    }
    return out.str();
}

}  // namespace qwave
