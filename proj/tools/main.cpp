#include <CLI11.hpp>
#include <iostream>

#include "qwave/scenario.hpp"

namespace {

// flags override config-file values, so file entries are applied first
void apply_config_file(qwave::ScenarioConfig& c, const std::string& path) {
    auto kv = qwave::parse_key_value_file(path);
    std::string unknown;
    for (const auto& [key, value] : kv) {
        try {
            if (key == "l") c.l = std::stoi(value);
            else if (key == "dx") c.dx = std::stod(value);
            else if (key == "mass") c.mass = std::stod(value);
            else if (key == "A") c.stride_a = std::stoi(value);
            else if (key == "potential") c.potential = value;
            else if (key == "omega") c.omega = std::stod(value);
            else if (key == "well_depth") c.well_depth = std::stod(value);
            else if (key == "well_width") c.well_width = std::stod(value);
            else if (key == "potential_file") c.potential_file = value;
            else if (key == "target") c.target = value;
            else if (key == "center") c.center = std::stod(value);
            else if (key == "sigma") c.sigma = std::stod(value);
            else if (key == "delta_index") c.delta_index = std::stoull(value);
            else if (key == "wave_number") c.wave_number = std::stoll(value);
            else if (key == "eigenstate") c.eigenstate_index = std::stoi(value);
            else if (key == "target_file") c.target_file = value;
            else if (key == "quadrature_points") c.quadrature_points = std::stoi(value);
            else if (key == "steps") c.steps = std::stoi(value);
            else if (key == "input") c.input_path = value;
            else if (key == "pointer_qubits") c.pointer_qubits = std::stoi(value);
            else if (key == "pointer_coupling") c.pointer_coupling = std::stod(value);
            else if (key == "pointer_duration") c.pointer_duration = std::stod(value);
            else if (key == "shots") c.shots = std::stoull(value);
            else if (key == "bound_min") c.bound_min = std::stod(value);
            else if (key == "bound_max") c.bound_max = std::stod(value);
            else if (key == "bath_levels") c.bath_levels = std::stoi(value);
            else if (key == "bath_gap") c.bath_gap = std::stod(value);
            else if (key == "bath_coupling") c.bath_coupling = std::stod(value);
            else if (key == "reset_period") c.reset_period = std::stoi(value);
            else if (key == "ramp") c.ramp = value;
            else if (key == "cycles") c.cycles = std::stoi(value);
            else if (key == "seed") c.seed = std::stoull(value);
            else if (key == "output") c.output_path = value;
            else if (key == "register") c.register_name = value;
            else if (key == "qft_qubits") c.qft_qubits = std::stoi(value);
            else if (key == "qft_states") c.qft_states = std::stoi(value);
            else unknown += (unknown.empty() ? "" : ", ") + key;
        } catch (const std::exception&) {
            throw std::runtime_error("config file: bad value for key '" + key + "'");
        }
    }
    if (!unknown.empty()) {
        throw std::runtime_error("config file: unknown keys: " + unknown);
    }
}

void add_grid_flags(CLI::App* cmd, qwave::ScenarioConfig& c) {
    cmd->add_option("--l", c.l, "qubits per degree of freedom");
    cmd->add_option("--dx", c.dx, "grid spacing");
    cmd->add_option("--mass", c.mass, "particle mass (hbar = 1)");
    cmd->add_option("--A", c.stride_a, "odd integer fixing dt = m dx^2 N / (2 pi A)");
    cmd->add_option("--potential", c.potential, "free | harmonic | square-well | file");
    cmd->add_option("--omega", c.omega, "harmonic frequency");
    cmd->add_option("--well-depth", c.well_depth, "square well depth");
    cmd->add_option("--well-width", c.well_width, "square well width");
    cmd->add_option("--potential-file", c.potential_file, "index,value potential table");
}

void add_target_flags(CLI::App* cmd, qwave::ScenarioConfig& c) {
    cmd->add_option("--target", c.target,
                    "gaussian | uniform | delta | plane-wave | file | eigenstate");
    cmd->add_option("--center", c.center, "gaussian center (default: box middle)");
    cmd->add_option("--sigma", c.sigma, "gaussian width (default: ground-state width)");
    cmd->add_option("--delta-index", c.delta_index, "cell for the delta target");
    cmd->add_option("--wave-number", c.wave_number, "plane-wave number k");
    cmd->add_option("--eigenstate", c.eigenstate_index, "oracle eigenstate index");
    cmd->add_option("--target-file", c.target_file, "state dump to use as the target");
    cmd->add_option("--quadrature-points", c.quadrature_points, "midpoint points per leaf");
    cmd->add_option("--in", c.input_path, "input state dump (overrides --target)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gate-level simulator of quantum-register wave-function dynamics"};
    app.require_subcommand(1);

    qwave::ScenarioConfig c;
    std::string config_path;
    app.add_option("--config", config_path, "key=value file applied before flags");

    CLI::App* prepare = app.add_subcommand("prepare", "load a target wave function");
    CLI::App* evolve = app.add_subcommand("evolve", "run Trotter steps");
    CLI::App* spectrum = app.add_subcommand("spectrum", "pointer-measured spectrum");
    CLI::App* cool = app.add_subcommand("cool", "bath-assisted decay to the ground state");
    CLI::App* qft = app.add_subcommand("qft-check", "gate QFT vs direct DFT self-test");

    for (CLI::App* cmd : {prepare, evolve, spectrum, cool}) {
        add_grid_flags(cmd, c);
        add_target_flags(cmd, c);
        cmd->add_option("--seed", c.seed, "sampling seed");
        cmd->add_option("--out", c.output_path, "output path");
        cmd->add_option("--register", c.register_name, "system register name");
    }
    evolve->add_option("--steps", c.steps, "Trotter step count");
    spectrum->add_option("--pointer-qubits", c.pointer_qubits, "pointer width p");
    spectrum->add_option("--pointer-coupling", c.pointer_coupling, "coupling k");
    spectrum->add_option("--pointer-duration", c.pointer_duration, "coupling time t");
    spectrum->add_option("--shots", c.shots, "measurement repetitions");
    spectrum->add_option("--bound-min", c.bound_min, "observable lower bound override");
    spectrum->add_option("--bound-max", c.bound_max, "observable upper bound override");
    cool->add_option("--bath-levels", c.bath_levels, "number of bath qubits");
    cool->add_option("--bath-gap", c.bath_gap, "base gap E0 (default: resonant with E1-E0)");
    cool->add_option("--bath-coupling", c.bath_coupling, "coupling g");
    cool->add_option("--reset-period", c.reset_period, "Trotter steps per reset cycle");
    cool->add_option("--ramp", c.ramp, "constant | linear-to-zero");
    cool->add_option("--cycles", c.cycles, "reset cycles");
    qft->add_option("--qubits", c.qft_qubits, "register width");
    qft->add_option("--states", c.qft_states, "random states to test");
    qft->add_option("--seed", c.seed, "random-state seed");
    qft->add_option("--out", c.output_path, "report path");

    // parse in two passes so config-file values land before flags
    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            apply_config_file(c, config_path);
            app.clear();
            app.parse(argc, argv);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    for (CLI::App* cmd : {prepare, evolve, spectrum, cool, qft}) {
        if (cmd->parsed()) c.command = cmd->get_name();
    }
    return qwave::run_scenario(c, std::cerr);
}
