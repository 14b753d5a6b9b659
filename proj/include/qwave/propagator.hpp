#pragma once

#include <span>
#include <string>
#include <vector>

#include "qwave/grid.hpp"
#include "qwave/phase.hpp"
#include "qwave/state.hpp"

namespace qwave {

/// Diagonal multi-register phase applied once per evolution step,
/// e^{-i F(n,n',...) dt}: the table's scale must be -dt with F in energy
/// units.
struct CouplingSpec {
    std::vector<std::string> registers;  // 2 or 3
    PhaseTable table;
};

/// One short-time propagation step on a single register, factored as
/// diagonal phase, Fourier transform, diagonal phase:
///
///   a_n <- e^{-i V(n dx) dt} e^{+i pi A n^2/N}
///          (1/sqrt N) sum_n' e^{-2 pi i A n n'/N} e^{+i pi A n'^2/N} a_n'
///
/// which is the discretized short-time Green's function
/// (1/sqrt N) e^{+i (m/2)(n-n')^2 dx^2/dt - i V(n dx) dt} acting on the
/// amplitude vector. For A > 1 the middle factor is realized as the A = 1
/// transform composed with the index map n -> A n mod N (a bijection since A
/// is odd). The quadratic exponents are reduced mod 2N in integer arithmetic,
/// so the phases are exactly periodic in n.
void trotter_step(StateVector& state, const std::string& reg, const GridSpec& grid,
                  const PotentialSpec& potential);

/// `steps` Trotter steps over several registers sharing one grid: each step
/// applies trotter_step to every register, then every coupling phase once.
void evolve(StateVector& state, std::span<const std::string> registers, const GridSpec& grid,
            const PotentialSpec& potential, std::span<const CouplingSpec> couplings, int steps);

/// Convenience: quadratic two-register coupling F(n,n') = kappa (x_n - x_n')^2
/// as a CouplingSpec table (scale -dt).
CouplingSpec quadratic_coupling(const GridSpec& grid, const std::string& reg_a,
                                const std::string& reg_b, double kappa);

}  // namespace qwave
