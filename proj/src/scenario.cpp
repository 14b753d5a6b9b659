#include "qwave/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qwave/cooling.hpp"
#include "qwave/gates.hpp"
#include "qwave/oracle.hpp"
#include "qwave/pointer.hpp"
#include "qwave/propagator.hpp"
#include "qwave/rng.hpp"
#include "qwave/state_prep.hpp"

namespace qwave {

namespace {

GridSpec make_grid(const ScenarioConfig& c) {
    return GridSpec::create(c.l, c.dx, c.mass, c.stride_a);
}

PotentialSpec make_potential(const ScenarioConfig& c, const GridSpec& grid) {
    if (c.potential == "free") return PotentialSpec::free_particle(grid);
    if (c.potential == "harmonic") return PotentialSpec::harmonic(grid, c.omega);
    if (c.potential == "square-well") {
        return PotentialSpec::square_well(grid, c.well_depth, c.well_width);
    }
    if (c.potential == "file") return PotentialSpec::from_file(grid, c.potential_file);
    throw std::invalid_argument("unknown potential '" + c.potential + "'");
}

TargetWavefunction make_target(const ScenarioConfig& c, const GridSpec& grid) {
    const double box = grid.box_length();
    if (c.target == "uniform") return uniform_target(box);
    if (c.target == "gaussian") {
        double center = (c.center < 0.0) ? box / 2.0 : c.center;
        double sigma = (c.sigma < 0.0) ? 1.0 / std::sqrt(2.0 * grid.mass * c.omega) : c.sigma;
        return gaussian_target(box, center, sigma);
    }
    if (c.target == "delta") return delta_target(box, grid.l, c.delta_index);
    if (c.target == "plane-wave") return plane_wave_target(box, grid.l, c.wave_number);
    if (c.target == "file") return target_from_state_file(c.target_file, grid.l, box);
    throw std::invalid_argument("unknown target '" + c.target + "'");
}

/// System-register state from the config: a dumped file, an oracle
/// eigenstate, or a loaded target wave function.
std::vector<Complex> make_system_amplitudes(const ScenarioConfig& c, const GridSpec& grid,
                                            const PotentialSpec& potential) {
    if (!c.input_path.empty()) {
        StateVector s = load_state(c.input_path);
        if (s.layout.total_qubits() != grid.l) {
            throw std::runtime_error("input state has wrong qubit count for the grid");
        }
        return s.amplitudes;
    }
    if (c.target == "eigenstate") {
        DenseOracle oracle(grid_hamiltonian(grid, potential));
        return oracle.eigenstate(c.eigenstate_index);
    }
    TargetWavefunction target = make_target(c, grid);
    int anc = target.phase.has_value() ? required_ancilla_width(*target.phase) : 1;
    RegisterLayout layout({Register{c.register_name, grid.l, RegisterRole::system},
                           Register{"anc", anc, RegisterRole::ancilla}});
    StateVector s = prepare_full(layout, c.register_name, target, "anc", c.quadrature_points);
    return extract_register_block(s, c.register_name);
}

void write_config_echo(const ScenarioConfig& c, const GridSpec* grid) {
    std::ofstream f(c.output_path + ".config");
    if (!f) throw std::runtime_error("cannot write config echo next to '" + c.output_path + "'");
    std::map<std::string, std::string> kv;
    kv["command"] = c.command;
    kv["seed"] = std::to_string(c.seed);
    kv["output"] = c.output_path;
    if (grid != nullptr) {
        kv["l"] = std::to_string(c.l);
        kv["dx"] = format_double(c.dx);
        kv["mass"] = format_double(c.mass);
        kv["A"] = std::to_string(c.stride_a);
        kv["dt"] = format_double(grid->dt);
        kv["potential"] = c.potential;
        if (c.potential == "harmonic") kv["omega"] = format_double(c.omega);
        if (c.potential == "square-well") {
            kv["well_depth"] = format_double(c.well_depth);
            kv["well_width"] = format_double(c.well_width);
        }
        if (c.potential == "file") kv["potential_file"] = c.potential_file;
    }
    if (c.command == "prepare" || (c.input_path.empty() && c.command != "qft-check")) {
        kv["target"] = c.target;
    }
    if (!c.input_path.empty()) kv["input"] = c.input_path;
    if (c.command == "spectrum") {
        kv["pointer_qubits"] = std::to_string(c.pointer_qubits);
        kv["pointer_coupling"] = format_double(c.pointer_coupling);
        kv["pointer_duration"] = format_double(c.pointer_duration);
        kv["shots"] = std::to_string(c.shots);
    }
    if (c.command == "cool") {
        kv["bath_levels"] = std::to_string(c.bath_levels);
        kv["bath_gap"] = format_double(c.bath_gap);
        kv["bath_coupling"] = format_double(c.bath_coupling);
        kv["reset_period"] = std::to_string(c.reset_period);
        kv["ramp"] = c.ramp;
        kv["cycles"] = std::to_string(c.cycles);
    }
    if (c.command == "qft-check") {
        kv["qft_qubits"] = std::to_string(c.qft_qubits);
        kv["qft_states"] = std::to_string(c.qft_states);
    }
    for (const auto& [key, value] : kv) f << key << '=' << value << '\n';
}

int run_prepare(const ScenarioConfig& c) {
    GridSpec grid = make_grid(c);
    PotentialSpec potential = make_potential(c, grid);
    std::vector<Complex> amps = make_system_amplitudes(c, grid, potential);
    RegisterLayout layout({Register{c.register_name, grid.l, RegisterRole::system}});
    StateVector out{layout, std::move(amps)};
    save_state(out, c.output_path);
    write_config_echo(c, &grid);
    return 0;
}

int run_evolve(const ScenarioConfig& c) {
    GridSpec grid = make_grid(c);
    PotentialSpec potential = make_potential(c, grid);
    std::vector<Complex> amps = make_system_amplitudes(c, grid, potential);
    RegisterLayout layout({Register{c.register_name, grid.l, RegisterRole::system}});
    StateVector state{layout, std::move(amps)};
    const std::string regs[] = {c.register_name};
    evolve(state, regs, grid, potential, {}, c.steps);
    save_state(state, c.output_path);
    write_config_echo(c, &grid);
    return 0;
}

int run_spectrum(const ScenarioConfig& c) {
    GridSpec grid = make_grid(c);
    PotentialSpec potential = make_potential(c, grid);
    std::vector<Complex> amps = make_system_amplitudes(c, grid, potential);

    RegisterLayout layout({Register{c.register_name, grid.l, RegisterRole::system},
                           Register{"ptr", c.pointer_qubits, RegisterRole::pointer}});
    StateVector state = new_basis_state(layout, 0);
    for (std::uint64_t v = 0; v < grid.n; ++v) state.amplitudes[v] = amps[v];

    PointerSpec spec;
    spec.pointer_register = "ptr";
    spec.coupling = c.pointer_coupling;
    spec.duration = c.pointer_duration;
    spec.observable = ObservableSpec::grid_hamiltonian_obs(c.register_name, grid, potential);
    if (c.bound_max > c.bound_min) {
        spec.observable.a_min = c.bound_min;
        spec.observable.a_max = c.bound_max;
    }

    SpectrumEstimate est = sample_spectrum(state, spec, c.shots, c.seed);
    std::ofstream f(c.output_path);
    if (!f) throw std::runtime_error("cannot open '" + c.output_path + "' for writing");
    f << spectrum_to_text(est);
    write_config_echo(c, &grid);
    return 0;
}

int run_cool(const ScenarioConfig& c) {
    GridSpec grid = make_grid(c);
    PotentialSpec potential = make_potential(c, grid);
    std::vector<Complex> amps = make_system_amplitudes(c, grid, potential);

    RegisterLayout layout({Register{c.register_name, grid.l, RegisterRole::system},
                           Register{"bath", c.bath_levels, RegisterRole::bath}});
    StateVector state = new_basis_state(layout, 0);
    for (std::uint64_t v = 0; v < grid.n; ++v) state.amplitudes[v] = amps[v];

    BathSpec bath;
    bath.bath_register = "bath";
    bath.n_levels = c.bath_levels;
    bath.coupling = c.bath_coupling;
    bath.reset_period = c.reset_period;
    if (c.ramp == "constant") {
        bath.ramp = RampKind::constant;
    } else if (c.ramp == "linear-to-zero") {
        bath.ramp = RampKind::linear_to_zero;
    } else {
        throw std::invalid_argument("unknown ramp '" + c.ramp + "'");
    }
    if (c.bath_gap > 0.0) {
        bath.base_gap = c.bath_gap;
    } else {
        DenseOracle oracle(grid_hamiltonian(grid, potential));
        bath.base_gap = oracle.eigenvalue(1) - oracle.eigenvalue(0);
    }

    auto [final_state, report] = run_cooling(state, c.register_name, grid, potential, bath,
                                             c.cycles, c.seed);
    std::ofstream f(c.output_path);
    if (!f) throw std::runtime_error("cannot open '" + c.output_path + "' for writing");
    f << cooling_report_to_text(report);
    write_config_echo(c, &grid);
    return 0;
}

int run_qft_check(const ScenarioConfig& c) {
    RegisterLayout layout({Register{"q", c.qft_qubits, RegisterRole::system}});
    double worst = 0.0;
    for (int s = 0; s < c.qft_states; ++s) {
        Rng rng(derive_seed(c.seed, s));
        StateVector state{layout, std::vector<Complex>(layout.dimension())};
        double nrm = 0.0;
        for (Complex& a : state.amplitudes) {
            a = Complex{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
            nrm += std::norm(a);
        }
        nrm = 1.0 / std::sqrt(nrm);
        for (Complex& a : state.amplitudes) a *= nrm;

        StateVector gate_path = state;
        apply_qft(gate_path, "q", Direction::forward);
        dft_direct(state, "q", Direction::forward);
        for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
            worst = std::max(worst, std::abs(gate_path.amplitudes[i] - state.amplitudes[i]));
        }
    }
    std::ofstream f(c.output_path);
    if (!f) throw std::runtime_error("cannot open '" + c.output_path + "' for writing");
    f << "qubits=" << c.qft_qubits << " states=" << c.qft_states
      << " max_deviation=" << format_double(worst) << '\n';
    write_config_echo(c, nullptr);
    return (worst < 1e-10) ? 0 : 1;
}

}  // namespace

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    std::string bad;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            bad += (bad.empty() ? "" : ", ") + ("line " + std::to_string(lineno));
            continue;
        }
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    if (!bad.empty()) {
        throw std::runtime_error("config file '" + path + "': malformed entries at " + bad);
    }
    return kv;
}

int run_scenario(const ScenarioConfig& config, std::ostream& diag) {
    try {
        if (config.command == "prepare") return run_prepare(config);
        if (config.command == "evolve") return run_evolve(config);
        if (config.command == "spectrum") return run_spectrum(config);
        if (config.command == "cool") return run_cool(config);
        if (config.command == "qft-check") return run_qft_check(config);
        diag << "unknown command '" << config.command << "'\n";
        return 2;
    } catch (const std::exception& e) {
        diag << config.command << ": " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qwave
