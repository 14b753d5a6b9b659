#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qwave/grid.hpp"
#include "qwave/propagator.hpp"
#include "qwave/state.hpp"

namespace qwave {

/// Hermitian observable the pointer couples to: either a diagonal grid
/// function A(n) on the system register, or the grid Hamiltonian itself.
///
/// a_min/a_max bound the eigenvalues reachable by the input state and gate
/// the pointer's no-wrap check. The named constructors fill in worst-case
/// bounds (table min/max, or kinetic cutoff plus potential range for a
/// Hamiltonian); callers that know the input's support may tighten them,
/// which is what makes useful pointer resolutions reachable for low-lying
/// spectra.
struct ObservableSpec {
    enum class Kind { diagonal, hamiltonian };

    Kind kind = Kind::diagonal;
    std::string system_register;
    std::vector<double> diagonal;  // kind == diagonal
    GridSpec grid;                 // kind == hamiltonian
    PotentialSpec potential;       // kind == hamiltonian
    double a_min = 0.0;
    double a_max = 0.0;

    static ObservableSpec diagonal_fn(const std::string& reg, std::vector<double> values);
    static ObservableSpec grid_hamiltonian_obs(const std::string& reg, const GridSpec& grid,
                                               const PotentialSpec& potential);
};

/// Von Neumann coupling H = k P A between the system and a p-qubit periodic
/// pointer register: after time t an A-eigenstate with eigenvalue a displaces
/// the pointer by k a t cells. Pointer momenta are folded to the symmetric
/// window (-2^{p-1}, 2^{p-1}], so shifts are signed and k t a must stay
/// inside that window for every reachable eigenvalue.
struct PointerSpec {
    std::string pointer_register;
    double coupling = 1.0;  // k, pointer cells per unit eigenvalue per unit time
    double duration = 1.0;  // t
    ObservableSpec observable;

    double cells_per_eigenvalue() const { return coupling * duration; }
};

/// Implements e^{-i k t P A}: the pointer is rotated to its momentum basis,
/// the momentum-diagonal shift phase is applied (a two-register phase table
/// for diagonal A; exact conditional evolution via the dense oracle for a
/// Hamiltonian A), and the pointer is rotated back. Requires the pointer
/// register in |0>.
void couple_pointer(StateVector& state, const PointerSpec& spec);

struct SpectrumPeak {
    std::int64_t cell = 0;        // signed pointer displacement of the local maximum
    double eigenvalue = 0.0;      // cell / (k t)
    double weight = 0.0;          // histogram mass within +-1 cell, as a fraction of shots
};

struct SpectrumEstimate {
    std::vector<std::uint64_t> histogram;  // counts per raw pointer cell
    std::vector<SpectrumPeak> peaks;
    std::uint64_t shots = 0;
    double cells_per_eigenvalue = 0.0;
};

/// Repeats prepare-couple-measure from the same input state `shots` times
/// (the coupled state is recomputed deterministically, so the pointer
/// marginal is sampled with one derived sub-seed per shot). A peak is a
/// local histogram maximum holding at least 2% of the shots.
SpectrumEstimate sample_spectrum(const StateVector& state, const PointerSpec& spec,
                                 std::uint64_t shots, std::uint64_t seed);

/// One coupled evolution plus pointer measurement. Returns the eigenvalue
/// estimate for the observed cell and the post-measurement state (pointer
/// collapsed onto the observed cell).
std::pair<double, StateVector> project_to_eigenstate(const StateVector& state,
                                                     const PointerSpec& spec,
                                                     std::uint64_t seed);

/// Optional evolution slotted between the two observations of a correlator
/// shot.
struct EvolveBetween {
    std::vector<std::string> registers;
    GridSpec grid;
    PotentialSpec potential;
    std::vector<CouplingSpec> couplings;
    int steps = 0;
};

struct CorrelatorEntry {
    std::string reg_i;
    std::string reg_j;
    double mean_product = 0.0;  // <x_i x_j> over shots (raw register outcomes)
    double std_error = 0.0;
    double mean_i = 0.0;
    double mean_j = 0.0;
    std::uint64_t shots = 0;
};

/// Statistical two-point function: per shot, rebuild the state, measure the
/// first register, optionally evolve, measure the second.
std::vector<CorrelatorEntry> estimate_two_point(
    const std::function<StateVector()>& state_factory,
    const std::vector<std::pair<std::string, std::string>>& register_pairs, std::uint64_t shots,
    std::uint64_t seed, const std::optional<EvolveBetween>& between = std::nullopt);

/// Correlator rows `i,j,mean,stderr`.
std::string correlator_to_text(const std::vector<CorrelatorEntry>& entries);
/// Histogram rows `cell,count,eigenvalue_estimate`.
std::string spectrum_to_text(const SpectrumEstimate& estimate);

/// Folds a raw pointer cell into the signed window (-2^{p-1}, 2^{p-1}].
std::int64_t fold_pointer_cell(std::uint64_t cell, int pointer_qubits);

}  // namespace qwave
