#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kss/diagnostics.hpp"
#include "kss/grid.hpp"
#include "kss/signal.hpp"

namespace kss {

/// Initial scalar data.
///   gaussian: peak at (center_x, center_y) with standard deviation `width`, plus a floor of
///             1e-6 of the peak, scaled so the discrete integral equals `mass`
///   constant: `value` everywhere
///   file:     nx * ny little-endian doubles, row-major cell order
struct ScalarInit {
    enum class Kind { Gaussian, Constant, File } kind = Kind::Constant;
    double center_x = 0.5;
    double center_y = 0.5;
    double width = 0.1;
    double mass = 1.0;
    double value = 0.0;
    double noise = 0.0; ///< relative multiplicative perturbation amplitude (gaussian only)
    std::string path;
};

/// Initial velocity: zero, or two files with (nx+1)*ny x-face and nx*(ny+1) y-face values.
/// File velocities are projected onto divergence-free no-slip fields before use.
struct VelocityInit {
    enum class Kind { Zero, File } kind = Kind::Zero;
    std::string path_x;
    std::string path_y;
};

/// phi = gravity * y, or a user expression in x and y.
struct PotentialSpec {
    enum class Kind { LinearY, Expression } kind = Kind::LinearY;
    double gravity = 1.0;
    std::string expression;
};

struct SimulationConfig {
    Domain domain;
    int nx = 64;
    int ny = 64;

    SignalProduction law;
    PotentialSpec potential;
    MonitorConfig monitor;

    ScalarInit n0;
    ScalarInit c0;
    VelocityInit u0;

    std::optional<double> dt; ///< empty: 0.2 min(dx, dy) / (1 + max|grad c0| + max|u0|)
    double t_end = 1.0;

    double diffusion_tol = 1e-12;
    double poisson_tol = 1e-12;
    int max_iter = 200;

    std::string output_dir;  ///< empty: nothing written
    bool snapshots = true;
    std::uint64_t seed = 0;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Reads an INI-style file ([section] then key = value lines, ';' or '#' comments).
/// Required: time.dt (a number or "auto") and time.t_end. Unknown keys are rejected.
/// Throws ConfigError with the line number on parse errors.
SimulationConfig load_config(const std::string& path);
SimulationConfig parse_config(const std::string& text, const std::string& source = "<string>");

struct ConfigOverrides {
    std::optional<double> alpha;
    std::optional<int> nx;
    std::optional<int> ny;
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
};

/// Applies command-line overrides and re-validates.
void apply_overrides(SimulationConfig& cfg, const ConfigOverrides& overrides);

} // namespace kss
