#include "qwave/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qwave/gates.hpp"
#include "qwave/oracle.hpp"
#include "qwave/rng.hpp"

namespace qwave {

ObservableSpec ObservableSpec::diagonal_fn(const std::string& reg, std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("diagonal observable: empty table");
    ObservableSpec o;
    o.kind = Kind::diagonal;
    o.system_register = reg;
    o.a_min = *std::min_element(values.begin(), values.end());
    o.a_max = *std::max_element(values.begin(), values.end());
    o.diagonal = std::move(values);
    return o;
}

ObservableSpec ObservableSpec::grid_hamiltonian_obs(const std::string& reg, const GridSpec& grid,
                                                    const PotentialSpec& potential) {
    ObservableSpec o;
    o.kind = Kind::hamiltonian;
    o.system_register = reg;
    o.grid = grid;
    o.potential = potential;
    double p_max = std::numbers::pi / grid.dx;  // momentum cutoff of the grid
    double v_min = *std::min_element(potential.values.begin(), potential.values.end());
    double v_max = *std::max_element(potential.values.begin(), potential.values.end());
    o.a_min = std::min(v_min, 0.0);
    o.a_max = p_max * p_max / (2.0 * grid.mass) + v_max;
    return o;
}

std::int64_t fold_pointer_cell(std::uint64_t cell, int pointer_qubits) {
    const std::int64_t p = std::int64_t{1} << pointer_qubits;
    auto c = static_cast<std::int64_t>(cell);
    return (c <= p / 2) ? c : c - p;
}

namespace {

void check_wrap_bound(const PointerSpec& spec, int pointer_qubits) {
    const double half = static_cast<double>(std::int64_t{1} << (pointer_qubits - 1));
    const double kt = spec.cells_per_eigenvalue();
    double lo = std::min(kt * spec.observable.a_min, kt * spec.observable.a_max);
    double hi = std::max(kt * spec.observable.a_min, kt * spec.observable.a_max);
    if (hi >= half || lo <= -half) {
        throw std::domain_error(
            "pointer would wrap: k t [a_min, a_max] must fit the signed window "
            "(-2^{p-1}, 2^{p-1})");
    }
}

}  // namespace

void couple_pointer(StateVector& state, const PointerSpec& spec) {
    const std::string& ptr = spec.pointer_register;
    const int p = state.layout.width(ptr);
    const std::uint64_t pdim = state.layout.register_dim(ptr);
    check_wrap_bound(spec, p);

    std::vector<double> ptr_probs = register_marginal(state, ptr);
    if (1.0 - ptr_probs[0] > 1e-12) {
        throw std::domain_error("pointer register '" + ptr + "' is not in |0>");
    }

    const double kt = spec.cells_per_eigenvalue();
    apply_qft(state, ptr, Direction::inverse);  // to the momentum basis

    if (spec.observable.kind == ObservableSpec::Kind::diagonal) {
        const std::string& sys = spec.observable.system_register;
        const std::vector<double>& a = spec.observable.diagonal;
        if (a.size() != state.layout.register_dim(sys)) {
            throw std::invalid_argument("diagonal observable does not span register '" + sys +
                                        "'");
        }
        // shift phase e^{-i (2 pi / 2^p) mu' k t A(n)} as an arity-2 table
        // over (system, pointer momentum)
        const double c = -2.0 * std::numbers::pi * kt / static_cast<double>(pdim);
        const std::uint64_t ndim = a.size();
        PhaseTable table = PhaseTable::from_function(
            ndim * pdim, c,
            [&](std::uint64_t idx) {
                std::uint64_t n = idx % ndim;
                auto mu = static_cast<double>(fold_pointer_cell(idx / ndim, p));
                return mu * a[n];
            },
            /*arity=*/2);
        const std::string regs[] = {sys, ptr};
        apply_phase_direct(state, regs, table);
    } else {
        // exact conditional evolution e^{-i (2 pi mu'/2^p) k t H} per pointer
        // momentum, via the dense oracle
        const std::string& sys = spec.observable.system_register;
        DenseOracle oracle(grid_hamiltonian(spec.observable.grid, spec.observable.potential));
        const std::uint64_t ndim = state.layout.register_dim(sys);
        const int sys_off = state.layout.offset(sys);
        const int ptr_off = state.layout.offset(ptr);
        const std::uint64_t both_mask =
            ((ndim - 1) << sys_off) | ((pdim - 1) << ptr_off);
        std::vector<Complex> block(ndim);
        for (std::uint64_t rest = 0; rest < state.amplitudes.size(); ++rest) {
            if ((rest & both_mask) != 0) continue;
            for (std::uint64_t mu = 0; mu < pdim; ++mu) {
                double t_eff = 2.0 * std::numbers::pi *
                               static_cast<double>(fold_pointer_cell(mu, p)) /
                               static_cast<double>(pdim) * kt;
                std::uint64_t base = rest | (mu << ptr_off);
                for (std::uint64_t v = 0; v < ndim; ++v) {
                    block[v] = state.amplitudes[base | (v << sys_off)];
                }
                oracle.evolve(block, t_eff);
                for (std::uint64_t v = 0; v < ndim; ++v) {
                    state.amplitudes[base | (v << sys_off)] = block[v];
                }
            }
        }
    }

    apply_qft(state, ptr, Direction::forward);  // back to the position basis
}

SpectrumEstimate sample_spectrum(const StateVector& state, const PointerSpec& spec,
                                 std::uint64_t shots, std::uint64_t seed) {
    StateVector coupled = state;
    couple_pointer(coupled, spec);
    std::vector<double> marginal = register_marginal(coupled, spec.pointer_register);
    const std::uint64_t pdim = marginal.size();
    const int p = coupled.layout.width(spec.pointer_register);

    SpectrumEstimate est;
    est.shots = shots;
    est.cells_per_eigenvalue = spec.cells_per_eigenvalue();
    est.histogram.assign(pdim, 0);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        Rng rng(derive_seed(seed, shot));
        double u = rng.next_double();
        double cum = 0.0;
        std::uint64_t cell = pdim - 1;
        for (std::uint64_t k = 0; k < pdim; ++k) {
            cum += marginal[k];
            if (u < cum) {
                cell = k;
                break;
            }
        }
        ++est.histogram[cell];
    }

    // peak rule: cyclic local maxima holding at least 2% of the shots;
    // weight integrates the +-1 neighborhood
    if (shots > 0) {
        const double threshold = 0.02 * static_cast<double>(shots);
        for (std::uint64_t c = 0; c < pdim; ++c) {
            std::uint64_t prev = (c + pdim - 1) % pdim;
            std::uint64_t next = (c + 1) % pdim;
            double count = static_cast<double>(est.histogram[c]);
            if (count < threshold) continue;
            if (count <= static_cast<double>(est.histogram[prev]) ||
                count < static_cast<double>(est.histogram[next])) {
                continue;  // ties resolve to the lowest cell
            }
            SpectrumPeak peak;
            peak.cell = fold_pointer_cell(c, p);
            peak.eigenvalue = static_cast<double>(peak.cell) / est.cells_per_eigenvalue;
            peak.weight = (static_cast<double>(est.histogram[prev]) + count +
                           static_cast<double>(est.histogram[next])) /
                          static_cast<double>(shots);
            est.peaks.push_back(peak);
        }
        std::sort(est.peaks.begin(), est.peaks.end(),
                  [](const SpectrumPeak& a, const SpectrumPeak& b) { return a.cell < b.cell; });
    }
    return est;
}

std::pair<double, StateVector> project_to_eigenstate(const StateVector& state,
                                                     const PointerSpec& spec,
                                                     std::uint64_t seed) {
    StateVector coupled = state;
    couple_pointer(coupled, spec);
    MeasurementSample sample = measure_register(coupled, spec.pointer_register, seed);
    const int p = coupled.layout.width(spec.pointer_register);
    double eigenvalue = static_cast<double>(fold_pointer_cell(sample.outcome, p)) /
                        spec.cells_per_eigenvalue();
    return {eigenvalue, std::move(sample.post_state)};
}

std::vector<CorrelatorEntry> estimate_two_point(
    const std::function<StateVector()>& state_factory,
    const std::vector<std::pair<std::string, std::string>>& register_pairs, std::uint64_t shots,
    std::uint64_t seed, const std::optional<EvolveBetween>& between) {
    std::vector<CorrelatorEntry> out;
    std::uint64_t pair_index = 0;
    for (const auto& [reg_i, reg_j] : register_pairs) {
        double sum_xy = 0.0, sum_xy2 = 0.0, sum_x = 0.0, sum_y = 0.0;
        for (std::uint64_t shot = 0; shot < shots; ++shot) {
            StateVector s = state_factory();
            std::uint64_t base = derive_seed(seed, pair_index * shots + shot);
            MeasurementSample first = measure_register(s, reg_i, derive_seed(base, 0));
            StateVector current = std::move(first.post_state);
            if (between.has_value()) {
                evolve(current, between->registers, between->grid, between->potential,
                       between->couplings, between->steps);
            }
            MeasurementSample second = measure_register(current, reg_j, derive_seed(base, 1));
            auto x = static_cast<double>(first.outcome);
            auto y = static_cast<double>(second.outcome);
            sum_xy += x * y;
            sum_xy2 += x * y * x * y;
            sum_x += x;
            sum_y += y;
        }
        CorrelatorEntry e;
        e.reg_i = reg_i;
        e.reg_j = reg_j;
        e.shots = shots;
        if (shots > 0) {
            auto n = static_cast<double>(shots);
            e.mean_product = sum_xy / n;
            e.mean_i = sum_x / n;
            e.mean_j = sum_y / n;
            double var = std::max(sum_xy2 / n - e.mean_product * e.mean_product, 0.0);
            e.std_error = (shots > 1) ? std::sqrt(var / (n - 1.0)) : 0.0;
        }
        out.push_back(e);
        ++pair_index;
    }
    return out;
}

std::string correlator_to_text(const std::vector<CorrelatorEntry>& entries) {
    std::ostringstream out;
    for (const CorrelatorEntry& e : entries) {
        out << e.reg_i << ',' << e.reg_j << ',' << format_double(e.mean_product) << ','
            << format_double(e.std_error) << '\n';
    }
    return out.str();
}

std::string spectrum_to_text(const SpectrumEstimate& estimate) {
    std::ostringstream out;
    int p = 0;
    while ((std::uint64_t{1} << p) < estimate.histogram.size()) ++p;
    for (std::uint64_t c = 0; c < estimate.histogram.size(); ++c) {
        double ev = static_cast<double>(fold_pointer_cell(c, p)) / estimate.cells_per_eigenvalue;
        out << c << ',' << estimate.histogram[c] << ',' << format_double(ev) << '\n';
    }
    return out.str();
}

}  // namespace qwave
