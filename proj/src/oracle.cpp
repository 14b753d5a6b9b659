#include "qwave/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwave {

DenseOracle::DenseOracle(Eigen::MatrixXd hamiltonian) : h_(std::move(hamiltonian)) {
    if (h_.rows() != h_.cols()) throw std::invalid_argument("oracle: matrix is not square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h_);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("oracle: eigendecomposition failed");
    }
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
}

std::vector<Complex> DenseOracle::eigenstate(int k) const {
    std::vector<Complex> v(dimension());
    for (int i = 0; i < dimension(); ++i) v[i] = Complex{vectors_(i, k), 0.0};
    return v;
}

double DenseOracle::energy_expectation(std::span<const Complex> amplitudes) const {
    if (static_cast<int>(amplitudes.size()) != dimension()) {
        throw std::invalid_argument("oracle: amplitude vector has wrong dimension");
    }
    Eigen::VectorXcd psi(dimension());
    for (int i = 0; i < dimension(); ++i) psi(i) = amplitudes[i];
    return std::real(psi.dot(h_ * psi));
}

double DenseOracle::population(int k, std::span<const Complex> amplitudes) const {
    Complex overlap{0.0, 0.0};
    for (int i = 0; i < dimension(); ++i) overlap += vectors_(i, k) * amplitudes[i];
    return std::norm(overlap);
}

void DenseOracle::evolve(std::span<Complex> amplitudes, double t) const {
    const int n = dimension();
    if (static_cast<int>(amplitudes.size()) != n) {
        throw std::invalid_argument("oracle: amplitude vector has wrong dimension");
    }
    Eigen::VectorXcd psi(n);
    for (int i = 0; i < n; ++i) psi(i) = amplitudes[i];
    Eigen::VectorXcd coeff = vectors_.transpose() * psi;
    for (int k = 0; k < n; ++k) coeff(k) *= std::polar(1.0, -energies_(k) * t);
    psi = vectors_ * coeff;
    for (int i = 0; i < n; ++i) amplitudes[i] = psi(i);
}

void DenseOracle::evolve_register(StateVector& state, const std::string& reg, double t) const {
    const std::uint64_t dim = state.layout.register_dim(reg);
    if (static_cast<int>(dim) != dimension()) {
        throw std::invalid_argument("oracle: register width does not match the Hamiltonian");
    }
    const int off = state.layout.offset(reg);
    const std::uint64_t reg_mask = (dim - 1) << off;
    std::vector<Complex> block(dim);
    for (std::uint64_t rest = 0; rest < state.amplitudes.size(); ++rest) {
        if ((rest & reg_mask) != 0) continue;
        for (std::uint64_t v = 0; v < dim; ++v) block[v] = state.amplitudes[rest | (v << off)];
        evolve(block, t);
        for (std::uint64_t v = 0; v < dim; ++v) state.amplitudes[rest | (v << off)] = block[v];
    }
}

Eigen::MatrixXd grid_hamiltonian(const GridSpec& grid, const PotentialSpec& potential) {
    if (grid.l > 10) throw std::domain_error("dense oracle capped at l <= 10");
    if (potential.values.size() != grid.n) {
        throw std::invalid_argument("potential table length does not match the grid");
    }
    const std::int64_t n = static_cast<std::int64_t>(grid.n);

    // kinetic term is circulant: T[n][n'] = t[(n - n') mod N]
    std::vector<double> kin(n, 0.0);
    for (std::int64_t k = 0; k < n; ++k) {
        std::int64_t kf = (k <= n / 2) ? k : k - n;
        double p = 2.0 * std::numbers::pi * static_cast<double>(kf) /
                   (static_cast<double>(n) * grid.dx);
        double e = p * p / (2.0 * grid.mass);
        for (std::int64_t d = 0; d < n; ++d) {
            kin[d] += e * std::cos(2.0 * std::numbers::pi * static_cast<double>(k * d) /
                                   static_cast<double>(n)) /
                      static_cast<double>(n);
        }
    }
    Eigen::MatrixXd h(n, n);
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            std::int64_t d = ((i - j) % n + n) % n;
            h(i, j) = kin[d];
        }
        h(i, i) += potential.values[i];
    }
    // symmetrize away rounding asymmetry so the solver sees an exactly
    // symmetric matrix
    h = 0.5 * (h + h.transpose()).eval();
    return h;
}

Eigen::MatrixXd two_particle_hamiltonian(const GridSpec& grid, const PotentialSpec& potential,
                                         const PhaseTable& coupling_energy) {
    if (2 * grid.l > 20) throw std::domain_error("two-particle oracle capped at 2l <= 20");
    if (coupling_energy.arity != 2 ||
        coupling_energy.values.size() != grid.n * grid.n) {
        throw std::invalid_argument("two-particle coupling table must be arity 2 over N^2");
    }
    Eigen::MatrixXd h1 = grid_hamiltonian(grid, potential);
    const std::int64_t n = static_cast<std::int64_t>(grid.n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n * n, n * n);
    // joint index = na + N * nb (first register fastest)
    for (std::int64_t nb = 0; nb < n; ++nb) {
        for (std::int64_t i = 0; i < n; ++i) {
            for (std::int64_t j = 0; j < n; ++j) {
                h(nb * n + i, nb * n + j) += h1(i, j);
            }
        }
    }
    for (std::int64_t na = 0; na < n; ++na) {
        for (std::int64_t i = 0; i < n; ++i) {
            for (std::int64_t j = 0; j < n; ++j) {
                h(i * n + na, j * n + na) += h1(i, j);
            }
        }
    }
    for (std::int64_t idx = 0; idx < n * n; ++idx) {
        h(idx, idx) += coupling_energy.value_at(idx);
    }
    return h;
}

StateVector reference_evolve(const StateVector& state, const std::string& reg,
                             const GridSpec& grid, const PotentialSpec& potential) {
    DenseOracle oracle(grid_hamiltonian(grid, potential));
    StateVector out = state;
    oracle.evolve_register(out, reg, grid.dt);
    return out;
}

double discretization_error_estimate(
    const GridSpec& grid, const std::function<PotentialSpec(const GridSpec&)>& potential_for,
    int k) {
    // probe both error directions: halving dx at fixed box, and doubling the
    // box at fixed dx
    GridSpec fine = GridSpec::create(grid.l + 1, grid.dx / 2.0, grid.mass, grid.stride_a);
    GridSpec wide = GridSpec::create(grid.l + 1, grid.dx, grid.mass, grid.stride_a);
    DenseOracle coarse(grid_hamiltonian(grid, potential_for(grid)));
    DenseOracle refined(grid_hamiltonian(fine, potential_for(fine)));
    DenseOracle widened(grid_hamiltonian(wide, potential_for(wide)));
    return 2.0 * (std::abs(coarse.eigenvalue(k) - refined.eigenvalue(k)) +
                  std::abs(coarse.eigenvalue(k) - widened.eigenvalue(k))) +
           1e-12;
}

}  // namespace qwave
