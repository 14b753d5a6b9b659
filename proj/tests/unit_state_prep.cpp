#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "helpers.hpp"
#include "qwave/gates.hpp"
#include "qwave/oracle.hpp"
#include "qwave/propagator.hpp"
#include "qwave/state_prep.hpp"

using namespace qwave;
using qwave::testing::max_amplitude_deviation;

namespace {

RegisterLayout single(int l) { return RegisterLayout({Register{"x", l, RegisterRole::system}}); }

/// Direct-normalization oracle: amplitudes proportional to |psi(x_n)| from
/// the density's grid samples.
std::vector<Complex> normalized_samples(const TargetWavefunction& target, int l) {
    const std::uint64_t n = std::uint64_t{1} << l;
    const double h = target.period / static_cast<double>(n);
    std::vector<Complex> amps(n);
    double nrm = 0.0;
    for (std::uint64_t v = 0; v < n; ++v) {
        double a = std::sqrt(target.density(static_cast<double>(v) * h));
        amps[v] = Complex{a, 0.0};
        nrm += a * a;
    }
    nrm = 1.0 / std::sqrt(nrm);
    for (Complex& a : amps) a *= nrm;
    return amps;
}

}  // namespace

TEST_CASE("uniform target: every split is even") {
    SplitTree tree = build_split_tree(uniform_target(4.0), 4);
    for (int i = 0; i <= 4; ++i) {
        for (double v : tree.integrals[i]) {
            CHECK(v == doctest::Approx(std::ldexp(1.0, -i)).epsilon(1e-13));
        }
    }
    for (int i = 1; i <= 4; ++i) {
        for (double a : tree.angles[i]) {
            CHECK(a == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-13));
        }
    }
    StateVector s = prepare_magnitude(single(4), "x", tree);
    for (const Complex& a : s.amplitudes) {
        CHECK(std::abs(a - Complex{0.25, 0.0}) < 1e-12);
    }
}

TEST_CASE("one-sided support empties the right half of the tree") {
    // support aligned with the left half of the cell-centered grid
    const int l = 4;
    const double period = 1.0;
    const double h = period / 16.0;
    TargetWavefunction t{
        [h, period](double x) {
            double y = std::fmod(x + 0.5 * h, period);
            if (y < 0) y += period;
            return (y < period / 2.0) ? 1.0 : 0.0;
        },
        period, std::nullopt};
    SplitTree tree = build_split_tree(t, l);
    CHECK(tree.integrals[1][1] == 0.0);
    CHECK(tree.angles[1][0] == 0.0);
    CHECK(tree.integrals[1][0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sibling integrals sum exactly to their parent") {
    TargetWavefunction t = gaussian_target(6.0, 3.1, 0.7);
    SplitTree tree = build_split_tree(t, 6);
    CHECK(tree.integrals[0][0] == 1.0);
    for (int i = 1; i <= 6; ++i) {
        for (std::size_t k = 0; k < tree.integrals[i - 1].size(); ++k) {
            double parent = tree.integrals[i - 1][k];
            double sum = tree.integrals[i][2 * k] + tree.integrals[i][2 * k + 1];
            CHECK(std::abs(sum - parent) <= 1e-12);
        }
    }
    for (int i = 0; i <= 6; ++i) {
        for (double v : tree.integrals[i]) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0 + 1e-15);
        }
    }
}

TEST_CASE("gaussian leaves match a million-point quadrature oracle") {
    const int l = 6;
    TargetWavefunction t = gaussian_target(8.0, 4.0, 1.0);
    SplitTree tree = build_split_tree(t, l, 2048);
    // 64 leaves x 16384 points = 2^20 evaluations
    SplitTree oracle = build_split_tree(t, l, 16384);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << l); ++k) {
        double a = tree.integrals[l][k];
        double b = oracle.integrals[l][k];
        if (b > 1e-300) {
            CHECK(std::abs(a - b) / b < 1e-8);
        }
    }
}

TEST_CASE("zero density is rejected") {
    TargetWavefunction t{[](double) { return 0.0; }, 1.0, std::nullopt};
    CHECK_THROWS_AS(build_split_tree(t, 3), std::domain_error);
    CHECK_THROWS_AS(build_split_tree(uniform_target(1.0), 0), std::invalid_argument);
    CHECK_THROWS_AS(build_split_tree(uniform_target(1.0), 3, 0), std::invalid_argument);
}

TEST_CASE("delta target loads an exact basis state") {
    const int l = 5;
    TargetWavefunction t = delta_target(2.0, l, 13);
    SplitTree tree = build_split_tree(t, l);
    StateVector s = prepare_magnitude(single(l), "x", tree);
    StateVector expected = new_basis_state(single(l), 13);
    CHECK(max_amplitude_deviation(s, expected) < 1e-12);
}

TEST_CASE("gaussian target loads with near-unit fidelity vs direct normalization") {
    for (int l : {6, 8}) {
        const double sigma = 1.0;
        const double period = 8.0 * sigma;
        TargetWavefunction t = gaussian_target(period, period / 2.0, sigma);
        SplitTree tree = build_split_tree(t, l);
        StateVector s = prepare_magnitude(single(l), "x", tree);

        std::vector<Complex> oracle = normalized_samples(t, l);
        Complex overlap{0.0, 0.0};
        for (std::uint64_t v = 0; v < s.amplitudes.size(); ++v) {
            overlap += std::conj(oracle[v]) * s.amplitudes[v];
        }
        CHECK(std::norm(overlap) >= 1.0 - 1e-6);

        // non-negative amplitudes summing in square to one
        double total = 0.0;
        for (const Complex& a : s.amplitudes) {
            CHECK(a.imag() == 0.0);
            CHECK(a.real() >= 0.0);
            total += std::norm(a);
        }
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
}

TEST_CASE("real positive target: prepare_full equals prepare_magnitude") {
    const int l = 5;
    RegisterLayout layout({Register{"x", l}, Register{"anc", 8, RegisterRole::ancilla}});
    TargetWavefunction t = gaussian_target(4.0, 2.0, 0.6);
    StateVector full = prepare_full(layout, "x", t, "anc");
    SplitTree tree = build_split_tree(t, l);
    StateVector mag = prepare_magnitude(single(l), "x", tree);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << l); ++v) {
        CHECK(std::abs(full.amplitudes[v] - mag.amplitudes[v]) < 1e-14);
    }
}

TEST_CASE("plane-wave target reproduces a QFT column") {
    const int l = 5;
    const std::int64_t k = 3;
    RegisterLayout layout({Register{"x", l}, Register{"anc", 8, RegisterRole::ancilla}});
    StateVector full = prepare_full(layout, "x", plane_wave_target(1.0, l, k), "anc");
    std::vector<Complex> sys = extract_register_block(full, "x");

    StateVector column = new_basis_state(single(l), static_cast<std::uint64_t>(k));
    apply_qft(column, "x", Direction::forward);
    CHECK(max_amplitude_deviation(sys, column.amplitudes) < 1e-12);
}

TEST_CASE("prepared harmonic ground state is nearly stationary") {
    const int l = 6;
    const double omega = 1.0;
    const double sigma = 1.0 / std::sqrt(2.0 * omega);
    const double box = 8.0 * sigma;
    GridSpec grid = GridSpec::create(l, box / 64.0, 1.0, 1);
    PotentialSpec pot = PotentialSpec::harmonic(grid, omega);

    // |psi_0|^2 = exp(-(x-c)^2 / (2 sigma^2)) with sigma = 1/sqrt(2 m omega)
    TargetWavefunction t = gaussian_target(box, box / 2.0, sigma);
    SplitTree tree = build_split_tree(t, l);
    StateVector s = prepare_magnitude(single(l), "x", tree);
    StateVector initial = s;
    for (int i = 0; i < 30; ++i) trotter_step(s, "x", grid, pot);
    CHECK(fidelity(s, initial) > 0.99);
}

TEST_CASE("tree and register widths must agree") {
    SplitTree tree = build_split_tree(uniform_target(1.0), 3);
    CHECK_THROWS_AS(prepare_magnitude(single(4), "x", tree), std::invalid_argument);
}

TEST_CASE("a dumped state round-trips through the file target") {
    const int l = 5;
    RegisterLayout layout({Register{"x", l}, Register{"anc", 17, RegisterRole::ancilla}});
    StateVector source = prepare_full(layout, "x", plane_wave_target(1.0, l, 2), "anc");
    StateVector sys{single(l), extract_register_block(source, "x")};

    std::string path = "/tmp/qwave_target_roundtrip.txt";
    save_state(sys, path);
    TargetWavefunction t = target_from_state_file(path, l, 1.0);
    StateVector rebuilt = prepare_full(layout, "x", t, "anc");
    std::vector<Complex> got = extract_register_block(rebuilt, "x");

    Complex overlap{0.0, 0.0};
    for (std::uint64_t v = 0; v < sys.amplitudes.size(); ++v) {
        overlap += std::conj(sys.amplitudes[v]) * got[v];
    }
    CHECK(std::norm(overlap) >= 1.0 - 1e-6);
    std::remove(path.c_str());
}

TEST_CASE("symmetrization") {
    RegisterLayout layout({Register{"a", 3}, Register{"b", 3}});

    StateVector diag = new_basis_state(layout, layout.replace("b", 4, 4));  // |4>|4>
    StateVector sym = symmetrize_two_particle(diag, "a", "b", 1);
    CHECK(fidelity(sym, diag) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(symmetrize_two_particle(diag, "a", "b", -1), std::domain_error);

    StateVector prod = new_basis_state(layout, layout.replace("b", 2, 5));  // |2>|5>
    StateVector anti = symmetrize_two_particle(prod, "a", "b", -1);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(anti.amplitudes[layout.replace("b", 2, 5)] - Complex{r}) < 1e-14);
    CHECK(std::abs(anti.amplitudes[layout.replace("b", 5, 2)] + Complex{r}) < 1e-14);

    // idempotence
    StateVector r1 = symmetrize_two_particle(qwave::testing::random_state(layout, 3), "a", "b", 1);
    StateVector r2 = symmetrize_two_particle(r1, "a", "b", 1);
    CHECK(max_amplitude_deviation(r1, r2) < 1e-12);

    CHECK_THROWS_AS(symmetrize_two_particle(prod, "a", "b", 2), std::invalid_argument);
    RegisterLayout uneven({Register{"a", 3}, Register{"b", 2}});
    CHECK_THROWS_AS(symmetrize_two_particle(new_basis_state(uneven, 0), "a", "b", 1),
                    std::invalid_argument);
}
