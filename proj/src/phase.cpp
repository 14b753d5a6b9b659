#include "qwave/phase.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qwave/gates.hpp"

namespace qwave {

namespace {

struct TableDomain {
    std::vector<std::string> regs;
    std::vector<std::uint64_t> dims;
};

TableDomain check_domain(const StateVector& state, std::span<const std::string> registers,
                         const PhaseTable& table) {
    if (table.arity < 1 || table.arity > 3) {
        throw std::invalid_argument("phase table arity must be 1, 2 or 3");
    }
    if (static_cast<int>(registers.size()) != table.arity) {
        throw std::invalid_argument("phase table arity " + std::to_string(table.arity) +
                                    " does not match " + std::to_string(registers.size()) +
                                    " registers");
    }
    TableDomain d;
    std::uint64_t product = 1;
    for (const std::string& r : registers) {
        d.regs.push_back(r);
        d.dims.push_back(state.layout.register_dim(r));
        product *= d.dims.back();
    }
    if (product != table.values.size()) {
        throw std::invalid_argument("phase table has " + std::to_string(table.values.size()) +
                                    " entries; registers span " + std::to_string(product));
    }
    if (product > max_phase_table_entries) {
        throw std::invalid_argument("phase table exceeds the 2^20-entry cap");
    }
    return d;
}

std::uint64_t table_index(const StateVector& state, const TableDomain& d, std::uint64_t global) {
    std::uint64_t idx = 0;
    std::uint64_t stride = 1;
    for (std::size_t j = 0; j < d.regs.size(); ++j) {
        idx += stride * state.layout.extract(d.regs[j], global);
        stride *= d.dims[j];
    }
    return idx;
}

/// Bitwise phasing with two's-complement weighting: bit j < w-1 contributes
/// c 2^j, the sign bit contributes -c 2^{w-1}. Coincides with bitwise_phase
/// whenever the register never holds a value with the top bit set.
void bitwise_phase_signed(StateVector& state, const std::string& reg, double c) {
    const int off = state.layout.offset(reg);
    const int w = state.layout.width(reg);
    for (int j = 0; j < w; ++j) {
        double weight = std::ldexp(c, j);
        if (j == w - 1) weight = -weight;
        apply_gate(state, GateOp::phase(weight, off + j));
    }
}

}  // namespace

PhaseTable PhaseTable::from_function(std::uint64_t count, double c,
                                     const std::function<double(std::uint64_t)>& f,
                                     int arity, int b_frac) {
    PhaseTable t;
    t.arity = arity;
    t.b_frac = b_frac;
    t.scale = c;
    t.values.resize(count);
    const double fac = static_cast<double>(std::int64_t{1} << b_frac);
    for (std::uint64_t i = 0; i < count; ++i) {
        t.values[i] = std::llround(f(i) * fac);
    }
    return t;
}

void apply_phase_direct(StateVector& state, std::span<const std::string> registers,
                        const PhaseTable& table) {
    TableDomain d = check_domain(state, registers, table);
    // one phase per table entry, reused across the rest of the layout
    std::vector<Complex> factors(table.values.size());
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        factors[i] = std::polar(1.0, table.scale * table.value_at(i));
    }
    scale_amplitudes(state, [&](std::uint64_t g) { return factors[table_index(state, d, g)]; });
}

void apply_phase_ancilla(StateVector& state, std::span<const std::string> registers,
                         const PhaseTable& table, const std::string& ancilla) {
    TableDomain d = check_domain(state, registers, table);
    const int anc_w = state.layout.width(ancilla);
    for (const std::string& r : registers) {
        if (r == ancilla) throw std::invalid_argument("ancilla overlaps the table domain");
    }

    // range check: |F| < 2^(anc_w - b_frac - 1), i.e. the raw fixed-point
    // integer fits the ancilla's two's complement range
    const std::int64_t limit = std::int64_t{1} << (anc_w - 1);
    for (std::int64_t v : table.values) {
        if (v >= limit || v < -limit) {
            throw std::domain_error("phase table value overflows a " + std::to_string(anc_w) +
                                    "-qubit ancilla");
        }
    }

    std::vector<double> anc_probs = register_marginal(state, ancilla);
    if (1.0 - anc_probs[0] > 1e-12) {
        throw std::domain_error("ancilla register '" + ancilla + "' is not in |0>");
    }

    const std::uint64_t anc_mask = (std::uint64_t{1} << anc_w) - 1;
    auto xor_f = [&](std::uint64_t v, std::uint64_t rest) {
        std::uint64_t bits =
            static_cast<std::uint64_t>(table.values[table_index(state, d, rest)]) & anc_mask;
        return v ^ bits;
    };

    gather_register(state, ancilla, xor_f);  // |n,0> -> |n,F(n)>
    bitwise_phase_signed(state, ancilla, table.scale / std::ldexp(1.0, table.b_frac));
    gather_register(state, ancilla, xor_f);  // uncompute
}

void bitwise_phase(StateVector& state, const std::string& reg, double c) {
    const int off = state.layout.offset(reg);
    const int w = state.layout.width(reg);
    for (int j = 0; j < w; ++j) {
        apply_gate(state, GateOp::phase(std::ldexp(c, j), off + j));
    }
}

int required_ancilla_width(const PhaseTable& table) {
    int w = 1;
    for (std::int64_t v : table.values) {
        while (v >= (std::int64_t{1} << (w - 1)) || v < -(std::int64_t{1} << (w - 1))) ++w;
    }
    return w;
}

void save_phase_table(const PhaseTable& table, std::ostream& out) {
    out << "# arity=" << table.arity << " b_frac=" << table.b_frac << " c="
        << format_double(table.scale) << '\n';
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        out << i << ',' << table.values[i] << '\n';
    }
}

void save_phase_table(const PhaseTable& table, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    save_phase_table(table, f);
}

PhaseTable load_phase_table(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# arity=", 0) != 0) {
        throw std::runtime_error("phase table file: missing '# arity=...' header");
    }
    PhaseTable t;
    if (std::sscanf(header.c_str(), "# arity=%d b_frac=%d c=%lf", &t.arity, &t.b_frac,
                    &t.scale) != 3) {
        throw std::runtime_error("phase table file: bad header '" + header + "'");
    }
    std::string line;
    std::vector<std::pair<std::uint64_t, std::int64_t>> entries;
    std::uint64_t max_idx = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        unsigned long long idx;
        long long value;
        if (std::sscanf(line.c_str(), "%llu,%lld", &idx, &value) != 2) {
            throw std::runtime_error("phase table file: bad line '" + line + "'");
        }
        entries.emplace_back(idx, value);
        if (idx > max_idx) max_idx = idx;
    }
    if (entries.empty()) throw std::runtime_error("phase table file: no entries");
    t.values.assign(max_idx + 1, 0);
    for (auto [idx, value] : entries) t.values[idx] = value;
    return t;
}

PhaseTable load_phase_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return load_phase_table(f);
}

}  // namespace qwave
