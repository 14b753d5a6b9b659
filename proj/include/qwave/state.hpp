#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwave/layout.hpp"

namespace qwave {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

/// Full joint state vector over the computational basis of all registers.
///
/// The engine never renormalizes silently; amplitude drift indicates a bug
/// in a supposedly unitary operation and tests assert on it.
struct StateVector {
    RegisterLayout layout;
    std::vector<Complex> amplitudes;
};

struct MeasurementSample {
    std::string register_name;
    std::uint64_t outcome = 0;
    StateVector post_state;
};

StateVector new_basis_state(const RegisterLayout& layout, std::uint64_t index);

double norm(const StateVector& state);

/// |<a|b>|^2. Throws on layout mismatch.
double fidelity(const StateVector& a, const StateVector& b);

Complex inner_product(const StateVector& a, const StateVector& b);

/// Exact marginal probabilities of one register (directly summed |a_n|^2).
std::vector<double> register_marginal(const StateVector& state, const std::string& reg);

/// Projects onto `reg == value` and renormalizes. Throws if the projection
/// annihilates the state.
StateVector project_register(const StateVector& state, const std::string& reg,
                             std::uint64_t value);

/// Samples one projective measurement of `reg`. Outcome k is drawn with the
/// exact marginal probability; the post state is the renormalized
/// conditional state. Deterministic given the seed.
MeasurementSample measure_register(const StateVector& state, const std::string& reg,
                                   std::uint64_t seed);

/// Amplitudes of `reg` under the condition that every other register is in
/// state |0>. Throws if more than 1e-12 of the probability mass sits
/// elsewhere.
std::vector<Complex> extract_register_block(const StateVector& state, const std::string& reg);

// ---------------------------------------------------------------------------
// Amplitude kernels. Higher modules mutate state only through these (and the
// gate layer built on top of them).
// ---------------------------------------------------------------------------

/// Applies `u` to one qubit (global index).
void apply_one_qubit(StateVector& state, int qubit, const Mat2& u);

/// Visits every amplitude pair (i0, i1 = i0 | 1<<qubit) and applies the
/// matrix returned by `mat(i0)`; a nullptr return skips the pair. `mat` may
/// inspect the other registers' bits of i0, so controlled and
/// value-conditioned single-qubit unitaries are all expressible here.
void transform_qubit_pairs(StateVector& state, int qubit,
                           const std::function<const Mat2*(std::uint64_t)>& mat);

/// Diagonal unitary: a_n *= factor(n).
void scale_amplitudes(StateVector& state,
                      const std::function<Complex(std::uint64_t)>& factor);

/// Reindexes one register: the new amplitude at register value v is the old
/// amplitude at value src(v, rest), where `rest` is the global index with the
/// register bits cleared. src must be a bijection in v for every rest.
void gather_register(StateVector& state, const std::string& reg,
                     const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& src);

// ---------------------------------------------------------------------------
// Dump/load. Text format: header `# L=<int> registers=<name:qubits;...>`,
// then one line per basis index `index,re,im` in full double precision.
// ---------------------------------------------------------------------------

void save_state(const StateVector& state, std::ostream& out);
void save_state(const StateVector& state, const std::string& path);
StateVector load_state(std::istream& in);
StateVector load_state(const std::string& path);

/// Shortest decimal string that round-trips a double.
std::string format_double(double v);

}  // namespace qwave
