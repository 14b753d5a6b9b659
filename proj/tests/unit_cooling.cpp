#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "helpers.hpp"
#include "qwave/cooling.hpp"
#include "qwave/oracle.hpp"
#include "qwave/pointer.hpp"
#include "qwave/propagator.hpp"

using namespace qwave;
using qwave::testing::max_amplitude_deviation;

namespace {

struct CoolingRig {
    GridSpec grid;
    PotentialSpec potential;
    RegisterLayout layout;
    DenseOracle oracle;
    double gap;

    explicit CoolingRig(int l, double omega = 1.0)
        : grid(GridSpec::create(l,
                                8.0 / std::sqrt(2.0 * omega) /
                                    static_cast<double>(std::uint64_t{1} << l),
                                1.0, 1)),
          potential(PotentialSpec::harmonic(grid, omega)),
          layout({Register{"x", l, RegisterRole::system},
                  Register{"bath", 1, RegisterRole::bath}}),
          oracle(grid_hamiltonian(grid, potential)),
          gap(oracle.eigenvalue(1) - oracle.eigenvalue(0)) {}

    BathSpec bath(double g, int reset_period) const {
        BathSpec b;
        b.bath_register = "bath";
        b.n_levels = 1;
        b.base_gap = gap;
        b.coupling = g;
        b.reset_period = reset_period;
        return b;
    }

    StateVector excited_state() const {
        StateVector s = new_basis_state(layout, 0);
        std::vector<Complex> v1 = oracle.eigenstate(1);
        for (std::uint64_t v = 0; v < grid.n; ++v) s.amplitudes[v] = v1[v];
        return s;
    }
};

/// Dense joint system+bath oracle: H (x) I + E_b |1><1| + g x_c (x) sigma_y,
/// built directly as a complex Hermitian matrix (test-side).
struct JointOracle {
    Eigen::VectorXd energies;
    Eigen::MatrixXcd vectors;

    JointOracle(const CoolingRig& rig, double g) {
        const std::int64_t n = static_cast<std::int64_t>(rig.grid.n);
        Eigen::MatrixXd h1 = grid_hamiltonian(rig.grid, rig.potential);
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
        const Complex i_unit{0.0, 1.0};
        for (std::int64_t b = 0; b < 2; ++b) {
            for (std::int64_t r = 0; r < n; ++r) {
                for (std::int64_t c = 0; c < n; ++c) h(b * n + r, b * n + c) = h1(r, c);
                h(b * n + r, b * n + r) += rig.gap * static_cast<double>(b);
            }
        }
        for (std::int64_t r = 0; r < n; ++r) {
            double x = rig.grid.centered_coordinate(static_cast<std::uint64_t>(r));
            // sigma_y = [[0, -i], [i, 0]] in the bath's |0>,|1> basis
            h(r, n + r) += -i_unit * g * x;
            h(n + r, r) += i_unit * g * x;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        energies = solver.eigenvalues();
        vectors = solver.eigenvectors();
    }

    void evolve(std::vector<Complex>& amps, double t) const {
        Eigen::VectorXcd psi(amps.size());
        for (std::size_t i = 0; i < amps.size(); ++i) psi(static_cast<long>(i)) = amps[i];
        Eigen::VectorXcd coeff = vectors.adjoint() * psi;
        for (long k = 0; k < coeff.size(); ++k) coeff(k) *= std::polar(1.0, -energies(k) * t);
        psi = vectors * coeff;
        for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = psi(static_cast<long>(i));
    }
};

}  // namespace

TEST_CASE("zero coupling: the system evolves exactly as the propagator alone") {
    CoolingRig rig(5);
    StateVector s = rig.excited_state();
    StateVector reference = s;

    cooling_step(s, "x", rig.grid, rig.potential, rig.bath(0.0, 16), 0.0);
    for (int i = 0; i < 16; ++i) trotter_step(reference, "x", rig.grid, rig.potential);
    CHECK(max_amplitude_deviation(s, reference) < 1e-13);
    CHECK(register_marginal(s, "bath")[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("zero-coupling run preserves the oracle energy trace") {
    CoolingRig rig(5);
    StateVector init = rig.excited_state();
    auto [fin, report] = run_cooling(init, "x", rig.grid, rig.potential, rig.bath(0.0, 16), 12, 7);

    // cycle energies must match a bath-free trotter evolution exactly
    StateVector reference = init;
    for (const CoolingCycleRecord& rec : report.cycles) {
        for (int i = 0; i < 16; ++i) trotter_step(reference, "x", rig.grid, rig.potential);
        double expected = rig.oracle.energy_expectation(extract_register_block(reference, "x"));
        CHECK(std::abs(rec.energy - expected) < 1e-9);
        for (int b : rec.bath_outcomes) CHECK(b == 0);
    }
}

TEST_CASE("an excited bath stays excited without coupling") {
    CoolingRig rig(4);
    StateVector s = new_basis_state(rig.layout, rig.layout.replace("bath", 0, 1));
    std::vector<Complex> v0 = rig.oracle.eigenstate(0);
    for (std::uint64_t v = 0; v < rig.grid.n; ++v) {
        s.amplitudes[rig.layout.replace("bath", v, 1)] = v0[v];
        s.amplitudes[v] = Complex{0.0, 0.0};
    }
    cooling_step(s, "x", rig.grid, rig.potential, rig.bath(0.0, 8), 0.0);
    CHECK(register_marginal(s, "bath")[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bath reset") {
    CoolingRig rig(4);

    StateVector zero = rig.excited_state();
    StateVector before = zero;
    std::vector<int> outcomes = reset_bath(zero, "bath", 3);
    CHECK(outcomes == std::vector<int>{0});
    CHECK(max_amplitude_deviation(zero, before) < 1e-14);

    // bath prepared in |1>: outcome 1, bath returns to |0>, system marginal kept
    StateVector one = new_basis_state(rig.layout, 0);
    std::vector<Complex> v0 = rig.oracle.eigenstate(0);
    for (std::uint64_t v = 0; v < rig.grid.n; ++v) {
        one.amplitudes[rig.layout.replace("bath", v, 1)] = v0[v];
        one.amplitudes[v] = Complex{0.0, 0.0};
    }
    outcomes = reset_bath(one, "bath", 5);
    CHECK(outcomes == std::vector<int>{1});
    CHECK(register_marginal(one, "bath")[0] == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<Complex> sys = extract_register_block(one, "x");
    for (std::uint64_t v = 0; v < rig.grid.n; ++v) {
        CHECK(std::abs(sys[v] - v0[v]) < 1e-12);
    }
    CHECK(std::abs(norm(one) - 1.0) < 1e-10);
}

TEST_CASE("resetting an entangled bath matches the direct projection oracle") {
    CoolingRig rig(4);
    // entangle by running a coupled step
    StateVector s = rig.excited_state();
    cooling_step(s, "x", rig.grid, rig.potential, rig.bath(0.4, 16), 0.4);

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        StateVector copy = s;
        std::vector<int> outcomes = reset_bath(copy, "bath", seed);

        // direct projection oracle on the pre-reset state
        StateVector projected = project_register(s, "bath", outcomes[0] ? 1 : 0);
        std::vector<Complex> expected(rig.grid.n);
        for (std::uint64_t v = 0; v < rig.grid.n; ++v) {
            expected[v] =
                projected.amplitudes[rig.layout.replace("bath", v, outcomes[0] ? 1 : 0)];
        }
        std::vector<Complex> got = extract_register_block(copy, "x");
        CHECK(qwave::testing::max_amplitude_deviation(got, expected) < 1e-12);
    }
}

TEST_CASE("resonant coupling transfers excitation to the bath") {
    CoolingRig rig(5);
    const double g = 0.3;

    // trotterized joint evolution against the dense joint oracle
    StateVector s = rig.excited_state();
    std::vector<Complex> exact = s.amplitudes;
    const int steps = 24;
    cooling_step(s, "x", rig.grid, rig.potential, rig.bath(g, steps), g);
    JointOracle joint(rig, g);
    joint.evolve(exact, rig.grid.dt * static_cast<double>(steps));

    double p_bath_trotter = register_marginal(s, "bath")[1];
    double p_bath_exact = 0.0;
    for (std::uint64_t v = 0; v < rig.grid.n; ++v) {
        p_bath_exact += std::norm(exact[rig.layout.replace("bath", v, 1)]);
    }
    CHECK(p_bath_trotter > 0.05);  // the transfer happened
    CHECK(std::abs(p_bath_trotter - p_bath_exact) < 0.05);
    StateVector exact_state{rig.layout, exact};
    CHECK(fidelity(s, exact_state) > 0.98);

    // across cycles the bath is seen excited at reset
    StateVector init = rig.excited_state();
    auto [fin, report] = run_cooling(init, "x", rig.grid, rig.potential, rig.bath(g, steps), 20, 9);
    int excited = 0;
    for (const CoolingCycleRecord& rec : report.cycles) excited += rec.bath_outcomes[0];
    CHECK(excited > 0);
}

TEST_CASE("cooling drives the system toward the ground state") {
    CoolingRig rig(6);
    StateVector init = rig.excited_state();
    double p0_start = rig.oracle.population(0, extract_register_block(init, "x"));

    auto [fin, report] =
        run_cooling(init, "x", rig.grid, rig.potential, rig.bath(0.18, 48), 40, 22);
    REQUIRE(report.cycles.size() == 40);
    double first = 0.0, last = 0.0;
    for (int c = 0; c < 10; ++c) first += report.cycles[c].energy;
    for (int c = 30; c < 40; ++c) last += report.cycles[c].energy;
    CHECK(last / 10.0 < first / 10.0);

    double p0_end = rig.oracle.population(0, extract_register_block(fin, "x"));
    CHECK(p0_end > p0_start);
    CHECK(p0_end > 0.9);
}

TEST_CASE("cooled state hands off to the pointer: the ground peak dominates") {
    CoolingRig rig(6);
    StateVector init = rig.excited_state();
    auto [fin, report] =
        run_cooling(init, "x", rig.grid, rig.potential, rig.bath(0.18, 48), 40, 31);
    std::vector<Complex> sys = extract_register_block(fin, "x");

    RegisterLayout pl({Register{"x", 6, RegisterRole::system},
                       Register{"ptr", 7, RegisterRole::pointer}});
    StateVector s = new_basis_state(pl, 0);
    for (std::uint64_t v = 0; v < rig.grid.n; ++v) s.amplitudes[v] = sys[v];

    PointerSpec spec;
    spec.pointer_register = "ptr";
    spec.coupling = 30.0;
    spec.duration = 1.0;
    spec.observable = ObservableSpec::grid_hamiltonian_obs("x", rig.grid, rig.potential);
    spec.observable.a_min = 0.0;
    spec.observable.a_max = 2.0;

    SpectrumEstimate est = sample_spectrum(s, spec, 2048, 5);
    REQUIRE(!est.peaks.empty());
    const SpectrumPeak* best = &est.peaks[0];
    for (const SpectrumPeak& p : est.peaks) {
        if (p.weight > best->weight) best = &p;
    }
    CHECK(std::abs(static_cast<double>(best->cell) - 30.0 * rig.oracle.eigenvalue(0)) <= 1.0);
    CHECK(best->weight > 0.9);
}

TEST_CASE("ramp schedules") {
    CoolingRig rig(4);
    BathSpec constant = rig.bath(0.5, 8);
    CHECK(ramp_value(constant, 0, 10) == 0.5);
    CHECK(ramp_value(constant, 9, 10) == 0.5);

    BathSpec ramped = rig.bath(0.5, 8);
    ramped.ramp = RampKind::linear_to_zero;
    CHECK(ramp_value(ramped, 0, 10) == doctest::Approx(0.5));
    CHECK(ramp_value(ramped, 9, 10) == doctest::Approx(0.0));
    CHECK(ramp_value(ramped, 5, 10) < 0.5);

    // run_cooling applies the ramp per cycle
    StateVector init = rig.excited_state();
    auto [fin, report] = run_cooling(init, "x", rig.grid, rig.potential, ramped, 10, 3);
    CHECK(report.cycles.front().coupling == doctest::Approx(0.5));
    CHECK(report.cycles.back().coupling == doctest::Approx(0.0));
}

TEST_CASE("bath gaps follow the E0 2^-n ladder and validation rejects bad specs") {
    BathSpec b;
    b.bath_register = "bath";
    b.n_levels = 3;
    b.base_gap = 2.0;
    b.coupling = 0.1;
    b.reset_period = 4;
    CHECK(b.gap(0) == 2.0);
    CHECK(b.gap(1) == 1.0);
    CHECK(b.gap(2) == 0.5);

    BathSpec bad = b;
    bad.n_levels = 5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = b;
    bad.reset_period = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = b;
    bad.coupling = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // report text shape: cycle,energy,coupling,outcomes
    CoolingReport rep;
    rep.cycles.push_back(CoolingCycleRecord{0, 1.5, 0.1, {1, 0}});
    std::string text = cooling_report_to_text(rep);
    CHECK(text == "0,1.5,0.10000000000000001,10\n");
}

TEST_CASE("a multi-qubit bath ladder runs and keeps the norm") {
    const int l = 5;
    GridSpec grid = GridSpec::create(l, 8.0 / std::sqrt(2.0) / 32.0, 1.0, 1);
    PotentialSpec pot = PotentialSpec::harmonic(grid, 1.0);
    DenseOracle oracle(grid_hamiltonian(grid, pot));
    RegisterLayout layout({Register{"x", l, RegisterRole::system},
                           Register{"bath", 3, RegisterRole::bath}});

    BathSpec bath;
    bath.bath_register = "bath";
    bath.n_levels = 3;
    bath.base_gap = 2.0 * (oracle.eigenvalue(1) - oracle.eigenvalue(0));  // ladder 2g, g, g/2
    bath.coupling = 0.15;
    bath.reset_period = 24;
    bath.ramp = RampKind::linear_to_zero;

    StateVector init = new_basis_state(layout, 0);
    std::vector<Complex> v2 = oracle.eigenstate(2);
    for (std::uint64_t v = 0; v < grid.n; ++v) init.amplitudes[v] = v2[v];
    double e_start = oracle.energy_expectation(extract_register_block(init, "x"));

    auto [fin, report] = run_cooling(init, "x", grid, pot, bath, 30, 17);
    REQUIRE(report.cycles.size() == 30);
    for (const CoolingCycleRecord& rec : report.cycles) {
        CHECK(rec.bath_outcomes.size() == 3);
        CHECK(std::isfinite(rec.energy));
    }
    CHECK(std::abs(norm(fin) - 1.0) < 1e-9);
    CHECK(report.cycles.back().energy < e_start);

    // width mismatch is rejected
    BathSpec wrong = bath;
    wrong.n_levels = 2;
    StateVector copy = fin;
    CHECK_THROWS_AS(cooling_step(copy, "x", grid, pot, wrong, 0.1), std::invalid_argument);
}

TEST_CASE("zero cycles returns the initial state untouched") {
    CoolingRig rig(4);
    StateVector init = rig.excited_state();
    auto [fin, report] = run_cooling(init, "x", rig.grid, rig.potential, rig.bath(0.2, 8), 0, 1);
    CHECK(report.cycles.empty());
    CHECK(max_amplitude_deviation(fin, init) == 0.0);
}
