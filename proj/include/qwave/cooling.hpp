#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qwave/grid.hpp"
#include "qwave/state.hpp"

namespace qwave {

enum class RampKind { constant, linear_to_zero };

/// Energy-drain bath: one qubit per two-level system, level n with gap
/// E0 2^-n. The system couples to each bath qubit through g x (x) sigma,
/// Trotterized per step as a system-value-conditioned real rotation of the
/// bath qubit by angle g dt x(n), with x(n) = (n - N/2) dx. The bath is
/// measured and reset to |0...0> every reset_period Trotter steps.
struct BathSpec {
    std::string bath_register;
    int n_levels = 1;
    double base_gap = 1.0;   // E0
    double coupling = 0.0;   // g
    int reset_period = 1;    // R, Trotter steps per cycle
    RampKind ramp = RampKind::constant;

    double gap(int level) const;
    void validate() const;
};

struct CoolingCycleRecord {
    int cycle = 0;
    double energy = 0.0;    // oracle <H> of the system after the reset
    double coupling = 0.0;  // coupling value used during the cycle
    std::vector<int> bath_outcomes;
};

struct CoolingReport {
    std::vector<CoolingCycleRecord> cycles;
};

/// Coupling strength for a given cycle under the ramp schedule.
double ramp_value(const BathSpec& bath, int cycle, int total_cycles);

/// One reset period of the joint evolution: per Trotter step, the system
/// step, the bath free phases e^{-i E_n dt} on excited levels, and the
/// conditioned coupling rotation for each bath qubit.
void cooling_step(StateVector& state, const std::string& system_register, const GridSpec& grid,
                  const PotentialSpec& potential, const BathSpec& bath, double coupling_value);

/// Measures every bath qubit (computational basis), then re-initializes the
/// bath to |0...0>. Returns the per-qubit outcomes.
std::vector<int> reset_bath(StateVector& state, const std::string& bath_register,
                            std::uint64_t seed);

/// Alternates cooling_step and reset_bath for total_cycles, recording the
/// oracle energy expectation of the system after each reset.
std::pair<StateVector, CoolingReport> run_cooling(const StateVector& initial,
                                                  const std::string& system_register,
                                                  const GridSpec& grid,
                                                  const PotentialSpec& potential,
                                                  const BathSpec& bath, int total_cycles,
                                                  std::uint64_t seed);

/// Report rows `cycle,energy,coupling,outcomes` (outcomes as bath qubit bits,
/// qubit 0 first).
std::string cooling_report_to_text(const CoolingReport& report);

}  // namespace qwave
