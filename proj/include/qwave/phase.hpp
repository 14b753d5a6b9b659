#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qwave/state.hpp"

namespace qwave {

/// Fixed-point table for a diagonal transform |n> -> e^{i c F(n)} |n>
/// (or the 2- and 3-register generalizations).
///
/// Stored entries are integers with b_frac fractional bits, so the value of
/// entry f is f / 2^b_frac and the phase applied is c * f / 2^b_frac.
/// For a multi-register table the entry index runs over register values with
/// the first-listed register fastest, matching the global bit-order rule.
struct PhaseTable {
    std::vector<std::int64_t> values;
    int arity = 1;
    int b_frac = 24;  // default fractional width; phase error <= |c| 2^-24
    double scale = 0.0;  // c, radians per unit of F

    double value_at(std::size_t i) const {
        return static_cast<double>(values[i]) / static_cast<double>(std::int64_t{1} << b_frac);
    }

    /// Quantizes a real-valued function on [0, count) into a table.
    static PhaseTable from_function(std::uint64_t count, double c,
                                    const std::function<double(std::uint64_t)>& f,
                                    int arity = 1, int b_frac = 24);
};

/// Maximum table size; larger grids are out of desk scope.
inline constexpr std::uint64_t max_phase_table_entries = std::uint64_t{1} << 20;

/// Diagonal multiply a_n *= e^{i c F(n)}, reading F at fixed-point
/// resolution. `registers` supplies the table's domain (arity must match).
void apply_phase_direct(StateVector& state, std::span<const std::string> registers,
                        const PhaseTable& table);

/// The three-step ancilla route: compute F into the ancilla register
/// (XOR-write of the fixed-point bits), phase the ancilla one bit at a time,
/// uncompute. Requires the ancilla in |0>; it returns there exactly,
/// disentangled. Negative F entries are held in two's complement and the top
/// ancilla bit carries the matching negative phase weight.
void apply_phase_ancilla(StateVector& state, std::span<const std::string> registers,
                         const PhaseTable& table, const std::string& ancilla);

/// |n> -> e^{i c n} |n> on one register, realized as exactly one phase gate
/// per qubit (angle c 2^j on qubit j).
void bitwise_phase(StateVector& state, const std::string& reg, double c);

/// Smallest ancilla width whose two's complement range holds every raw
/// fixed-point entry of the table.
int required_ancilla_width(const PhaseTable& table);

// Table file format: header `# arity=<k> b_frac=<b> c=<real>`, then
// `index,value` lines (value is the raw fixed-point integer).
void save_phase_table(const PhaseTable& table, std::ostream& out);
void save_phase_table(const PhaseTable& table, const std::string& path);
PhaseTable load_phase_table(std::istream& in);
PhaseTable load_phase_table(const std::string& path);

}  // namespace qwave
