#include "qwave/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qwave {

namespace {

void check_qubit(const StateVector& state, int q) {
    if (q < 0 || q >= state.layout.total_qubits()) {
        throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range");
    }
}

void apply_phase_on_qubit(StateVector& state, int q, double theta) {
    check_qubit(state, q);
    const Complex f = std::polar(1.0, theta);
    const std::uint64_t mask = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
        if (i & mask) state.amplitudes[i] *= f;
    }
}

void apply_controlled_phase(StateVector& state, int qc, int qt, double theta) {
    check_qubit(state, qc);
    check_qubit(state, qt);
    if (qc == qt) throw std::invalid_argument("controlled_phase: control equals target");
    const Complex f = std::polar(1.0, theta);
    const std::uint64_t mask = (std::uint64_t{1} << qc) | (std::uint64_t{1} << qt);
    for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
        if ((i & mask) == mask) state.amplitudes[i] *= f;
    }
}

void apply_swap(StateVector& state, int qa, int qb) {
    check_qubit(state, qa);
    check_qubit(state, qb);
    if (qa == qb) throw std::invalid_argument("swap: identical qubits");
    const std::uint64_t ma = std::uint64_t{1} << qa;
    const std::uint64_t mb = std::uint64_t{1} << qb;
    for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
        // visit each (01,10) pair once, from its 01 member
        if ((i & ma) && !(i & mb)) {
            std::uint64_t j = (i & ~ma) | mb;
            std::swap(state.amplitudes[i], state.amplitudes[j]);
        }
    }
}

}  // namespace

CircuitStats CircuitStats::of(const std::vector<GateOp>& circuit) {
    CircuitStats s;
    for (const GateOp& g : circuit) {
        ++s.gate_count;
        switch (g.kind) {
            case GateKind::phase: ++s.phases; break;
            case GateKind::rotation: ++s.rotations; break;
            case GateKind::controlled_phase: ++s.controlled_phases; break;
            case GateKind::swap: ++s.swaps; break;
        }
    }
    return s;
}

void apply_gate(StateVector& state, const GateOp& gate) {
    switch (gate.kind) {
        case GateKind::phase:
            apply_phase_on_qubit(state, gate.q0, gate.theta);
            break;
        case GateKind::rotation: {
            check_qubit(state, gate.q0);
            double c = std::cos(gate.theta);
            double s = std::sin(gate.theta);
            apply_one_qubit(state, gate.q0, Mat2{Complex{c}, Complex{s}, Complex{s}, Complex{-c}});
            break;
        }
        case GateKind::controlled_phase:
            apply_controlled_phase(state, gate.q0, gate.q1, gate.theta);
            break;
        case GateKind::swap:
            apply_swap(state, gate.q0, gate.q1);
            break;
    }
}

std::vector<GateOp> qft_circuit(int l) {
    if (l < 1) throw std::invalid_argument("qft_circuit: need at least one qubit");
    std::vector<GateOp> circuit;
    circuit.reserve(static_cast<std::size_t>(l) * (l + 1) / 2 + l / 2);
    for (int q = l - 1; q >= 0; --q) {
        circuit.push_back(GateOp::rotation(std::numbers::pi / 4.0, q));
        for (int m = q - 1; m >= 0; --m) {
            // contributes e^{+2 pi i / 2^{q-m+1}} when both bits are set
            double theta = 2.0 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << (q - m + 1));
            circuit.push_back(GateOp::controlled_phase(theta, m, q));
        }
    }
    for (int i = 0; i < l / 2; ++i) {
        circuit.push_back(GateOp::swap(i, l - 1 - i));
    }
    return circuit;
}

void apply_qft(StateVector& state, const std::string& reg, Direction dir) {
    const int off = state.layout.offset(reg);
    std::vector<GateOp> circuit = qft_circuit(state.layout.width(reg));
    auto offset_gate = [off](GateOp g) {
        g.q0 += off;
        if (g.kind == GateKind::controlled_phase || g.kind == GateKind::swap) g.q1 += off;
        return g;
    };
    if (dir == Direction::forward) {
        for (const GateOp& g : circuit) apply_gate(state, offset_gate(g));
    } else {
        // reversed circuit with conjugated phases; the rotation is a real
        // involution and the swap is self-inverse
        for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
            GateOp g = *it;
            if (g.kind == GateKind::phase || g.kind == GateKind::controlled_phase) {
                g.theta = -g.theta;
            }
            apply_gate(state, offset_gate(g));
        }
    }
}

void dft_direct(StateVector& state, const std::string& reg, Direction dir) {
    const std::uint64_t dim = state.layout.register_dim(reg);
    // Twiddle factors indexed by (v * v') mod N, so periodicity in either
    // index is exact by construction.
    std::vector<Complex> twiddle(dim);
    const double sign = (dir == Direction::forward) ? 1.0 : -1.0;
    for (std::uint64_t j = 0; j < dim; ++j) {
        twiddle[j] = std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                         static_cast<double>(j) / static_cast<double>(dim));
    }
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(dim));
    const int off = state.layout.offset(reg);
    const std::uint64_t reg_mask = (dim - 1) << off;
    std::vector<Complex> scratch(dim);
    for (std::uint64_t rest = 0; rest < state.amplitudes.size(); ++rest) {
        if ((rest & reg_mask) != 0) continue;
        for (std::uint64_t v = 0; v < dim; ++v) {
            Complex acc{0.0, 0.0};
            for (std::uint64_t w = 0; w < dim; ++w) {
                acc += twiddle[(v * w) & (dim - 1)] * state.amplitudes[rest | (w << off)];
            }
            scratch[v] = acc * inv_sqrt;
        }
        for (std::uint64_t v = 0; v < dim; ++v) {
            state.amplitudes[rest | (v << off)] = scratch[v];
        }
    }
}

std::string circuit_to_text(const std::vector<GateOp>& circuit) {
    std::ostringstream out;
    for (const GateOp& g : circuit) {
        switch (g.kind) {
            case GateKind::phase:
                out << "phase," << format_double(g.theta) << ',' << g.q0 << '\n';
                break;
            case GateKind::rotation:
                out << "rotation," << format_double(g.theta) << ',' << g.q0 << '\n';
                break;
            case GateKind::controlled_phase:
                out << "controlled_phase," << format_double(g.theta) << ',' << g.q0 << ','
                    << g.q1 << '\n';
                break;
            case GateKind::swap:
                out << "swap," << g.q0 << ',' << g.q1 << '\n';
                break;
        }
    }
    return out.str();
}

}  // namespace qwave
