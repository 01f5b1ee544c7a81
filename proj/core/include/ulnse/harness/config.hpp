#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ulnse/solver.hpp"

namespace ulnse::harness {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat key = value run description. See docs/config.md for the schema.
struct ExperimentConfig {
    std::string experiment;
    int n = 256;
    double L = 32.0 * std::numbers::pi;
    double alpha = 0.0;
    double dt = 0.01;
    double t_end = 20.0;
    int diag_every = 10;
    double diag_R = 4.0;

    std::string initial = "random_bump";
    double initial_amplitude = 1.0;
    std::string forcing = "none";
    double forcing_amplitude = 0.0;
    int forcing_wavenumber = 1;

    std::vector<std::uint64_t> seeds{1};
    std::vector<double> R_values{4.0, 8.0, 16.0};
    int centers = 20;
    std::vector<double> alphas{0.5, 1.0};
    std::vector<double> deltas{1e-2, 1e-3, 1e-4};

    /// dissipative: absorbing level (0 selects half the initial ul norm) and
    /// the time by which it must be reached (0 selects t_end / 2).
    double level = 0.0;
    double t_half = 0.0;
    /// Decay rate of the radius schedule overlay (0 selects alpha / 4).
    double gamma = 0.0;

    /// smoothing: fit window for the log-log slope of the gradient norm.
    double window_start = 0.05;
    double window_end = 0.5;
    double min_slope = -0.6;

    /// lemmas: dual exponents of the pressure pairing bound and the ratio
    /// ceiling used by the report.
    double p = 1.5;
    double q = 3.0;
    double max_ratio = 100.0;
    /// uniqueness: ceiling on the spread of amplification across deltas.
    double max_spread = 1.5;

    std::string output = "runs";

    /// Normalized key = value pairs, in schema order, for the manifest.
    std::vector<std::pair<std::string, std::string>> echo() const;
    Grid grid() const { return Grid(n, L); }
    /// Solver settings with the given forcing (nullopt for g = 0).
    SolverConfig solver_config(std::optional<VectorField> forcing_field, double alpha_value) const;
};

const std::vector<std::string>& registered_experiments();
const std::vector<std::string>& config_keys();

/// Parses and validates. Unknown keys, unknown experiments or generators,
/// non-dual exponents and dt above the CFL bound of the generated initial
/// data throw ConfigError.
ExperimentConfig parse_config_string(const std::string& text, const std::string& origin = "<string>");
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Checks everything but the CFL bound.
void validate_static(const ExperimentConfig& cfg);
/// The bound h / (2 max|u0|) over all seeds, initial_amplitude included.
double cfl_bound(const ExperimentConfig& cfg);

}  // namespace ulnse::harness
