#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>

#include "qwave/grid.hpp"
#include "qwave/phase.hpp"
#include "qwave/state.hpp"

namespace qwave {

/// Brute-force classical reference: exact evolution, eigenstates and energy
/// expectations of a dense Hermitian (here real symmetric) Hamiltonian,
/// backed by a full eigendecomposition. Everything the gate-level engine
/// produces at desk scale is checked against this.
class DenseOracle {
  public:
    explicit DenseOracle(Eigen::MatrixXd hamiltonian);

    int dimension() const { return static_cast<int>(energies_.size()); }
    const Eigen::VectorXd& eigenvalues() const { return energies_; }
    double eigenvalue(int k) const { return energies_(k); }
    /// k-th eigenvector as a unit-norm complex amplitude vector.
    std::vector<Complex> eigenstate(int k) const;

    double energy_expectation(std::span<const Complex> amplitudes) const;
    /// |<psi_k|amplitudes>|^2.
    double population(int k, std::span<const Complex> amplitudes) const;

    /// In-place exact e^{-iHt} on a bare amplitude vector.
    void evolve(std::span<Complex> amplitudes, double t) const;
    /// Exact e^{-iHt} applied to one register of a joint state (identity on
    /// the others).
    void evolve_register(StateVector& state, const std::string& reg, double t) const;

  private:
    Eigen::MatrixXd h_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXd vectors_;  // columns are eigenvectors
};

/// Discretized single-particle Hamiltonian: spectral kinetic term p^2/2m on
/// DFT momenta p_k = 2 pi k'/(N dx), k' folded to (-N/2, N/2], plus the
/// diagonal potential. Real symmetric by momentum-pair symmetry. l <= 10.
Eigen::MatrixXd grid_hamiltonian(const GridSpec& grid, const PotentialSpec& potential);

/// Two identical particles on one grid with a diagonal coupling F(n,n') in
/// energy units (arity-2 table, first index fastest): H (x) I + I (x) H +
/// diag(F). Joint dimension N^2.
Eigen::MatrixXd two_particle_hamiltonian(const GridSpec& grid, const PotentialSpec& potential,
                                         const PhaseTable& coupling_energy);

/// One exact reference step e^{-iH dt} on `reg` (spec'd convenience wrapper;
/// builds the oracle on the fly).
StateVector reference_evolve(const StateVector& state, const std::string& reg,
                             const GridSpec& grid, const PotentialSpec& potential);

/// Estimate of the eigenvalue discretization error for level k: compares the
/// grid value against a once-refined grid (same box, l+1, potential rebuilt
/// by `potential_for`) and doubles the difference.
double discretization_error_estimate(
    const GridSpec& grid, const std::function<PotentialSpec(const GridSpec&)>& potential_for,
    int k);

}  // namespace qwave
