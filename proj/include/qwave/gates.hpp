#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwave/state.hpp"

namespace qwave {

enum class GateKind { phase, rotation, controlled_phase, swap };

/// One elementary gate. Qubit indices are layout-global when applied through
/// apply_gate; qft_circuit emits register-local indices that apply_qft
/// offsets.
///
/// Matrices (angles in radians):
///   phase(theta, q):       diag(1, e^{i theta})
///   rotation(theta, q):    [[cos, sin], [sin, -cos]]  (real O(2) mixer;
///                          rotation(pi/4) is the Hadamard, rotation(pi/2)
///                          flips the qubit, and |0> -> cos|0> + sin|1>)
///   controlled_phase(theta, qc, qt): e^{i theta} on |11>, identity elsewhere
///   swap(qa, qb):          exchanges the two qubits
struct GateOp {
    GateKind kind = GateKind::phase;
    double theta = 0.0;
    int q0 = 0;
    int q1 = 0;  // control target pair / swap pair; unused for 1-qubit gates

    static GateOp phase(double theta, int q) { return {GateKind::phase, theta, q, 0}; }
    static GateOp rotation(double theta, int q) { return {GateKind::rotation, theta, q, 0}; }
    static GateOp controlled_phase(double theta, int control, int target) {
        return {GateKind::controlled_phase, theta, control, target};
    }
    static GateOp swap(int a, int b) { return {GateKind::swap, 0.0, a, b}; }
};

struct CircuitStats {
    std::size_t gate_count = 0;
    std::size_t phases = 0;
    std::size_t rotations = 0;
    std::size_t controlled_phases = 0;
    std::size_t swaps = 0;

    /// Count excluding the bit-reversal swaps, for comparison against the
    /// l^2/2 estimate that may or may not include them.
    std::size_t gate_count_without_swaps() const { return gate_count - swaps; }

    static CircuitStats of(const std::vector<GateOp>& circuit);
};

void apply_gate(StateVector& state, const GateOp& gate);

enum class Direction { forward, inverse };

/// Gate decomposition of the quantum Fourier transform on an l-qubit
/// register (local qubit indices 0..l-1), output in standard bit order.
/// Realizes |n> -> (1/sqrt N) sum_n' e^{+2 pi i n n' / N} |n'>: one mixing
/// rotation per qubit, l(l-1)/2 controlled phases, floor(l/2) swaps.
std::vector<GateOp> qft_circuit(int l);

/// Applies the gate-decomposed QFT (or its inverse) to one register.
void apply_qft(StateVector& state, const std::string& reg, Direction dir);

/// Same contract as apply_qft, computed as the dense O(N^2) matrix sum.
void dft_direct(StateVector& state, const std::string& reg, Direction dir);

/// One gate per line, `kind,theta,qubits...`, for golden-file tests.
std::string circuit_to_text(const std::vector<GateOp>& circuit);

}  // namespace qwave
