#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qwave/grid.hpp"
#include "qwave/phase.hpp"
#include "qwave/state.hpp"

namespace qwave {

/// Target wave function to load into a register. `density` is |psi(x)|^2,
/// periodic with the given period and evaluated anywhere on the line; the
/// optional phase table carries arg psi(x_n) in radians (scale 1). Grid cell
/// n is centered on x_n = n period / 2^l, so the loaded magnitudes track the
/// grid samples |psi(x_n)|.
struct TargetWavefunction {
    std::function<double(double)> density;
    double period = 1.0;
    std::optional<PhaseTable> phase;
};

TargetWavefunction uniform_target(double period);
TargetWavefunction gaussian_target(double period, double center, double sigma);
/// Nonzero only on grid cell n0 of an l-qubit register.
TargetWavefunction delta_target(double period, int l, std::uint64_t n0);
/// Uniform magnitude with phase e^{2 pi i k n / N}.
TargetWavefunction plane_wave_target(double period, int l, std::int64_t k);
/// Density and phase sampled from a dumped single-register state file.
TargetWavefunction target_from_state_file(const std::string& path, int l, double period);

/// Binary tree of probability integrals I[i][k] (level i splits the period
/// into 2^i intervals) and the rotation angles that realize the splits.
/// Siblings sum to their parent exactly: quadrature happens once at the
/// leaves and parents are built by summation.
struct SplitTree {
    int levels = 0;
    /// integrals[i][k], i = 0..levels, k < 2^i; integrals[0][0] == 1.
    std::vector<std::vector<double>> integrals;
    /// angles[i][k], i = 1..levels, k < 2^{i-1}: the rotation splitting
    /// level-(i-1) node k, with sin = sqrt(right child / parent).
    std::vector<std::vector<double>> angles;
};

/// Midpoint quadrature with q points per leaf cell (q 2^{l-i} points per
/// level-i interval). Throws if the total integral vanishes.
SplitTree build_split_tree(const TargetWavefunction& target, int l, int points_per_leaf = 16);

/// Loads sqrt(I[l][n]) as non-negative amplitudes via l rounds of
/// conditioned O(2) rotations, most significant qubit first. The register
/// must start in |0>.
StateVector prepare_magnitude(const RegisterLayout& layout, const std::string& reg,
                              const SplitTree& tree);

/// prepare_magnitude followed by the ancilla phase route for arg psi.
StateVector prepare_full(const RegisterLayout& layout, const std::string& reg,
                         const TargetWavefunction& target, const std::string& ancilla,
                         int points_per_leaf = 16);

/// Projects the joint state of two equal-width registers onto the symmetric
/// (+1) or antisymmetric (-1) subspace under register exchange and
/// renormalizes. Throws if the projection annihilates the state.
StateVector symmetrize_two_particle(const StateVector& state, const std::string& reg_a,
                                    const std::string& reg_b, int sign);

}  // namespace qwave
