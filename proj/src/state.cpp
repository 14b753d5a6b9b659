#include "qwave/state.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qwave/rng.hpp"

namespace qwave {

StateVector new_basis_state(const RegisterLayout& layout, std::uint64_t index) {
    if (index >= layout.dimension()) {
        throw std::domain_error("basis index " + std::to_string(index) +
                                " out of range for " + std::to_string(layout.total_qubits()) +
                                " qubits");
    }
    StateVector state{layout, std::vector<Complex>(layout.dimension(), Complex{0.0, 0.0})};
    state.amplitudes[index] = Complex{1.0, 0.0};
    return state;
}

double norm(const StateVector& state) {
    double s = 0.0;
    for (const Complex& a : state.amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (!(a.layout == b.layout)) {
        throw std::invalid_argument("inner_product: register layouts differ");
    }
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

std::vector<double> register_marginal(const StateVector& state, const std::string& reg) {
    const RegisterLayout& layout = state.layout;
    std::vector<double> probs(layout.register_dim(reg), 0.0);
    for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
        probs[layout.extract(reg, i)] += std::norm(state.amplitudes[i]);
    }
    return probs;
}

StateVector project_register(const StateVector& state, const std::string& reg,
                             std::uint64_t value) {
    const RegisterLayout& layout = state.layout;
    if (value >= layout.register_dim(reg)) {
        throw std::domain_error("projection value out of range for register '" + reg + "'");
    }
    StateVector out{layout, std::vector<Complex>(state.amplitudes.size(), Complex{0.0, 0.0})};
    double mass = 0.0;
    for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
        if (layout.extract(reg, i) == value) {
            out.amplitudes[i] = state.amplitudes[i];
            mass += std::norm(state.amplitudes[i]);
        }
    }
    if (mass < 1e-24) {
        throw std::domain_error("projection onto '" + reg + "' = " + std::to_string(value) +
                                " annihilates the state");
    }
    double scale = 1.0 / std::sqrt(mass);
    for (Complex& a : out.amplitudes) a *= scale;
    return out;
}

MeasurementSample measure_register(const StateVector& state, const std::string& reg,
                                   std::uint64_t seed) {
    std::vector<double> probs = register_marginal(state, reg);
    Rng rng(seed);
    double u = rng.next_double();
    double cum = 0.0;
    std::uint64_t outcome = probs.size() - 1;  // guards against rounding shortfall
    for (std::uint64_t k = 0; k < probs.size(); ++k) {
        cum += probs[k];
        if (u < cum) {
            outcome = k;
            break;
        }
    }
    return MeasurementSample{reg, outcome, project_register(state, reg, outcome)};
}

std::vector<Complex> extract_register_block(const StateVector& state, const std::string& reg) {
    const RegisterLayout& layout = state.layout;
    std::uint64_t dim = layout.register_dim(reg);
    int off = layout.offset(reg);
    std::vector<Complex> block(dim);
    double inside = 0.0;
    for (std::uint64_t v = 0; v < dim; ++v) {
        block[v] = state.amplitudes[v << off];
        inside += std::norm(block[v]);
    }
    double total = 0.0;
    for (const Complex& a : state.amplitudes) total += std::norm(a);
    if (total - inside > 1e-12) {
        throw std::domain_error("extract_register_block: other registers are not in |0>");
    }
    return block;
}

void apply_one_qubit(StateVector& state, int qubit, const Mat2& u) {
    if (qubit < 0 || qubit >= state.layout.total_qubits()) {
        throw std::invalid_argument("qubit index " + std::to_string(qubit) + " out of range");
    }
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    const std::uint64_t lo = mask - 1;
    const std::uint64_t hi = ~lo;
    const std::uint64_t pairs = state.amplitudes.size() >> 1;
    for (std::uint64_t i = 0; i < pairs; ++i) {
        std::uint64_t i0 = ((i & hi) << 1) | (i & lo);
        std::uint64_t i1 = i0 | mask;
        Complex a0 = state.amplitudes[i0];
        Complex a1 = state.amplitudes[i1];
        state.amplitudes[i0] = u[0] * a0 + u[1] * a1;
        state.amplitudes[i1] = u[2] * a0 + u[3] * a1;
    }
}

void transform_qubit_pairs(StateVector& state, int qubit,
                           const std::function<const Mat2*(std::uint64_t)>& mat) {
    if (qubit < 0 || qubit >= state.layout.total_qubits()) {
        throw std::invalid_argument("qubit index " + std::to_string(qubit) + " out of range");
    }
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    const std::uint64_t lo = mask - 1;
    const std::uint64_t hi = ~lo;
    const std::uint64_t pairs = state.amplitudes.size() >> 1;
    for (std::uint64_t i = 0; i < pairs; ++i) {
        std::uint64_t i0 = ((i & hi) << 1) | (i & lo);
        const Mat2* u = mat(i0);
        if (u == nullptr) continue;
        std::uint64_t i1 = i0 | mask;
        Complex a0 = state.amplitudes[i0];
        Complex a1 = state.amplitudes[i1];
        state.amplitudes[i0] = (*u)[0] * a0 + (*u)[1] * a1;
        state.amplitudes[i1] = (*u)[2] * a0 + (*u)[3] * a1;
    }
}

void scale_amplitudes(StateVector& state,
                      const std::function<Complex(std::uint64_t)>& factor) {
    for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
        state.amplitudes[i] *= factor(i);
    }
}

void gather_register(StateVector& state, const std::string& reg,
                     const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& src) {
    const RegisterLayout& layout = state.layout;
    const std::uint64_t dim = layout.register_dim(reg);
    const int off = layout.offset(reg);
    const std::uint64_t reg_mask = (dim - 1) << off;
    std::vector<Complex> scratch(dim);

    // Walk every block of constant "rest" bits once.
    const std::uint64_t total = state.amplitudes.size();
    for (std::uint64_t rest = 0; rest < total; ++rest) {
        if ((rest & reg_mask) != 0) continue;
        for (std::uint64_t v = 0; v < dim; ++v) {
            scratch[v] = state.amplitudes[rest | (src(v, rest) << off)];
        }
        for (std::uint64_t v = 0; v < dim; ++v) {
            state.amplitudes[rest | (v << off)] = scratch[v];
        }
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void save_state(const StateVector& state, std::ostream& out) {
    out << "# L=" << state.layout.total_qubits() << " registers=";
    const auto& regs = state.layout.registers();
    for (std::size_t i = 0; i < regs.size(); ++i) {
        if (i > 0) out << ';';
        out << regs[i].name << ':' << regs[i].qubits;
    }
    out << '\n';
    for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
        out << i << ',' << format_double(state.amplitudes[i].real()) << ','
            << format_double(state.amplitudes[i].imag()) << '\n';
    }
}

void save_state(const StateVector& state, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    save_state(state, f);
}

StateVector load_state(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# L=", 0) != 0) {
        throw std::runtime_error("state file: missing '# L=...' header");
    }
    std::size_t rpos = header.find(" registers=");
    if (rpos == std::string::npos) {
        throw std::runtime_error("state file: header lacks 'registers=' field");
    }
    int total = std::stoi(header.substr(4, rpos - 4));
    std::string reg_text = header.substr(rpos + 11);
    std::vector<Register> regs;
    std::stringstream rs(reg_text);
    std::string item;
    while (std::getline(rs, item, ';')) {
        std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
            throw std::runtime_error("state file: bad register entry '" + item + "'");
        }
        // roles are not part of the format; loaded registers default to system
        regs.push_back(Register{item.substr(0, colon), std::stoi(item.substr(colon + 1)),
                                RegisterRole::system});
    }
    RegisterLayout layout(regs);
    if (layout.total_qubits() != total) {
        throw std::runtime_error("state file: register widths do not sum to L");
    }
    StateVector state{layout, std::vector<Complex>(layout.dimension(), Complex{0.0, 0.0})};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::uint64_t idx;
        double re, im;
        if (std::sscanf(line.c_str(), "%llu,%lf,%lf", (unsigned long long*)&idx, &re, &im) != 3) {
            throw std::runtime_error("state file: bad amplitude line '" + line + "'");
        }
        if (idx >= state.amplitudes.size()) {
            throw std::runtime_error("state file: index out of range in '" + line + "'");
        }
        state.amplitudes[idx] = Complex{re, im};
    }
    return state;
}

StateVector load_state(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return load_state(f);
}

}  // namespace qwave
