#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace qwave {

/// One CLI invocation, fully resolved. Every run echoes the resolved
/// configuration (including the derived dt) to `<output>.config` so results
/// are reproducible from the artifacts alone.
struct ScenarioConfig {
    std::string command;  // prepare | evolve | spectrum | cool | qft-check

    // grid
    int l = 6;
    double dx = 0.1;
    double mass = 1.0;
    int stride_a = 1;

    // potential
    std::string potential = "harmonic";  // free | harmonic | square-well | file
    double omega = 1.0;
    double well_depth = 1.0;
    double well_width = 1.0;
    std::string potential_file;

    // target wave function (prepare, and initial states elsewhere)
    std::string target = "gaussian";  // gaussian | uniform | delta | plane-wave | file | eigenstate
    double center = -1.0;             // gaussian center; negative means box middle
    double sigma = -1.0;              // gaussian width; negative means ground-state width
    std::uint64_t delta_index = 0;
    std::int64_t wave_number = 1;
    int eigenstate_index = 0;
    std::string target_file;
    int quadrature_points = 16;

    // evolution
    int steps = 0;
    std::string input_path;

    // pointer
    int pointer_qubits = 8;
    double pointer_coupling = 1.0;
    double pointer_duration = 40.0;
    std::uint64_t shots = 4096;
    double bound_min = 0.0;  // observable bound overrides; used when bound_max > bound_min
    double bound_max = 0.0;

    // bath
    int bath_levels = 1;
    double bath_gap = -1.0;  // negative means resonant with the oracle E1 - E0
    double bath_coupling = 0.15;
    int reset_period = 64;
    std::string ramp = "constant";  // constant | linear-to-zero
    int cycles = 40;

    std::uint64_t seed = 0;
    std::string output_path = "out.txt";
    std::string register_name = "x";

    // qft-check
    int qft_qubits = 8;
    int qft_states = 100;
};

/// Parses `key=value` lines into explicit keys (used for config files; flags
/// override).
std::map<std::string, std::string> parse_key_value_file(const std::string& path);

/// Executes the scenario, writing its outputs and the config echo. Returns
/// the process exit status (0 on success). Errors print one diagnostic line
/// to `diag`.
int run_scenario(const ScenarioConfig& config, std::ostream& diag);

}  // namespace qwave
