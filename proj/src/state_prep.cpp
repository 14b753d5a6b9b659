#include "qwave/state_prep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwave {

namespace {

double wrap_into_period(double x, double period) {
    double y = std::fmod(x, period);
    if (y < 0.0) y += period;
    return y;
}

}  // namespace

TargetWavefunction uniform_target(double period) {
    return TargetWavefunction{[](double) { return 1.0; }, period, std::nullopt};
}

TargetWavefunction gaussian_target(double period, double center, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian target: sigma must be positive");
    return TargetWavefunction{
        [period, center, sigma](double x) {
            double d = std::remainder(x - center, period);  // minimum-image distance
            return std::exp(-d * d / (2.0 * sigma * sigma));
        },
        period, std::nullopt};
}

TargetWavefunction delta_target(double period, int l, std::uint64_t n0) {
    const double h = period / static_cast<double>(std::uint64_t{1} << l);
    const double lo = (static_cast<double>(n0) - 0.5) * h;
    const double hi = (static_cast<double>(n0) + 0.5) * h;
    return TargetWavefunction{
        [period, lo, hi](double x) {
            double y = wrap_into_period(x - lo, period);
            return (y < hi - lo) ? 1.0 : 0.0;
        },
        period, std::nullopt};
}

TargetWavefunction plane_wave_target(double period, int l, std::int64_t k) {
    const std::uint64_t n = std::uint64_t{1} << l;
    TargetWavefunction t = uniform_target(period);
    // F(v) = k v / N is exact in fixed point for b_frac = l, and keeps the
    // ancilla narrow
    t.phase = PhaseTable::from_function(
        n, 2.0 * std::numbers::pi,
        [k, n](std::uint64_t v) {
            return static_cast<double>(k) * static_cast<double>(v) / static_cast<double>(n);
        },
        /*arity=*/1, /*b_frac=*/l);
    return t;
}

TargetWavefunction target_from_state_file(const std::string& path, int l, double period) {
    StateVector s = load_state(path);
    if (s.layout.total_qubits() != l) {
        throw std::runtime_error("target state file has wrong qubit count");
    }
    const std::uint64_t n = std::uint64_t{1} << l;
    const double h = period / static_cast<double>(n);
    std::vector<double> dens(n);
    std::vector<double> args(n);
    for (std::uint64_t v = 0; v < n; ++v) {
        dens[v] = std::norm(s.amplitudes[v]);
        args[v] = (dens[v] > 0.0) ? std::arg(s.amplitudes[v]) : 0.0;
    }
    TargetWavefunction t;
    t.period = period;
    // piecewise constant over the (centered) grid cells
    t.density = [dens, n, h, period](double x) {
        double y = wrap_into_period(x + 0.5 * h, period);
        auto cell = static_cast<std::uint64_t>(y / h);
        if (cell >= n) cell = n - 1;
        return dens[cell];
    };
    bool any_phase = false;
    for (double a : args) {
        if (a != 0.0) any_phase = true;
    }
    if (any_phase) {
        // store arg/2pi so the table stays within (-1/2, 1/2] and a 17-qubit
        // ancilla suffices; phase error <= 2 pi 2^-16
        t.phase = PhaseTable::from_function(
            n, 2.0 * std::numbers::pi,
            [args](std::uint64_t v) { return args[v] / (2.0 * std::numbers::pi); },
            /*arity=*/1, /*b_frac=*/16);
    }
    return t;
}

SplitTree build_split_tree(const TargetWavefunction& target, int l, int points_per_leaf) {
    if (l < 1) throw std::invalid_argument("split tree: need at least one level");
    if (points_per_leaf < 1) throw std::invalid_argument("split tree: need q >= 1");
    const std::uint64_t n = std::uint64_t{1} << l;
    const double h = target.period / static_cast<double>(n);

    // leaf integrals over cells centered on the grid points
    std::vector<double> leaves(n, 0.0);
    double total = 0.0;
    for (std::uint64_t v = 0; v < n; ++v) {
        const double left = (static_cast<double>(v) - 0.5) * h;
        double acc = 0.0;
        for (int t = 0; t < points_per_leaf; ++t) {
            double x = left + (t + 0.5) * h / points_per_leaf;
            acc += target.density(wrap_into_period(x, target.period));
        }
        leaves[v] = acc * h / points_per_leaf;
        total += leaves[v];
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw std::domain_error("split tree: target density integrates to zero");
    }

    SplitTree tree;
    tree.levels = l;
    tree.integrals.resize(l + 1);
    tree.integrals[l].resize(n);
    for (std::uint64_t v = 0; v < n; ++v) tree.integrals[l][v] = leaves[v] / total;
    for (int i = l - 1; i >= 0; --i) {
        tree.integrals[i].resize(std::uint64_t{1} << i);
        for (std::uint64_t k = 0; k < tree.integrals[i].size(); ++k) {
            tree.integrals[i][k] = tree.integrals[i + 1][2 * k] + tree.integrals[i + 1][2 * k + 1];
        }
    }
    tree.integrals[0][0] = 1.0;  // the leaf normalization leaves the root a few ulp off

    tree.angles.resize(l + 1);
    for (int i = 1; i <= l; ++i) {
        tree.angles[i].resize(std::uint64_t{1} << (i - 1));
        for (std::uint64_t k = 0; k < tree.angles[i].size(); ++k) {
            double left = tree.integrals[i][2 * k];
            double right = tree.integrals[i][2 * k + 1];
            tree.angles[i][k] =
                (left + right > 0.0) ? std::atan2(std::sqrt(right), std::sqrt(left)) : 0.0;
        }
    }
    return tree;
}

StateVector prepare_magnitude(const RegisterLayout& layout, const std::string& reg,
                              const SplitTree& tree) {
    if (layout.width(reg) != tree.levels) {
        throw std::invalid_argument("register width does not match the split tree");
    }
    StateVector state = new_basis_state(layout, 0);
    const int off = layout.offset(reg);
    const int l = tree.levels;

    for (int i = 1; i <= l; ++i) {
        const int target_qubit = off + (l - i);  // most significant first
        // one O(2) rotation per already-split prefix, applied in parallel
        std::vector<Mat2> mats(tree.angles[i].size());
        for (std::size_t k = 0; k < mats.size(); ++k) {
            double c = std::cos(tree.angles[i][k]);
            double s = std::sin(tree.angles[i][k]);
            mats[k] = Mat2{Complex{c}, Complex{s}, Complex{s}, Complex{-c}};
        }
        transform_qubit_pairs(state, target_qubit, [&](std::uint64_t i0) -> const Mat2* {
            std::uint64_t prefix = layout.extract(reg, i0) >> (l - i + 1);
            return &mats[prefix];
        });
    }
    return state;
}

StateVector prepare_full(const RegisterLayout& layout, const std::string& reg,
                         const TargetWavefunction& target, const std::string& ancilla,
                         int points_per_leaf) {
    SplitTree tree = build_split_tree(target, layout.width(reg), points_per_leaf);
    StateVector state = prepare_magnitude(layout, reg, tree);
    if (target.phase.has_value()) {
        const std::string regs[] = {reg};
        apply_phase_ancilla(state, regs, *target.phase, ancilla);
    }
    return state;
}

StateVector symmetrize_two_particle(const StateVector& state, const std::string& reg_a,
                                    const std::string& reg_b, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("symmetrize: sign must be +1 or -1");
    const RegisterLayout& layout = state.layout;
    if (layout.width(reg_a) != layout.width(reg_b)) {
        throw std::invalid_argument("symmetrize: registers have different widths");
    }
    StateVector out{layout, std::vector<Complex>(state.amplitudes.size())};
    double mass = 0.0;
    for (std::uint64_t g = 0; g < state.amplitudes.size(); ++g) {
        std::uint64_t va = layout.extract(reg_a, g);
        std::uint64_t vb = layout.extract(reg_b, g);
        std::uint64_t swapped = layout.replace(reg_b, layout.replace(reg_a, g, vb), va);
        Complex v = 0.5 * (state.amplitudes[g] +
                           static_cast<double>(sign) * state.amplitudes[swapped]);
        out.amplitudes[g] = v;
        mass += std::norm(v);
    }
    if (mass < 1e-24) {
        throw std::domain_error("symmetrize: projection annihilates the state");
    }
    double scale = 1.0 / std::sqrt(mass);
    for (Complex& a : out.amplitudes) a *= scale;
    return out;
}

}  // namespace qwave
