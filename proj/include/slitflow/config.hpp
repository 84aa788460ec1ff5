/// @file config.hpp
/// @brief Run configuration: strict line-oriented `key = value` parsing with
/// `#` comments. Unknown keys, malformed values and missing required keys
/// fail loudly, naming the line. The echoed effective configuration
/// re-parses to an identical config.

#pragma once

#include <optional>
#include <string>

#include "slitflow/complexplane.hpp"

namespace slitflow {

enum class RunMode { ProbeMap, Field, Advect, SweepEps, Check };

std::string mode_name(RunMode mode);
std::optional<RunMode> mode_from_name(const std::string& name);

struct RunConfig {
    RunMode mode = RunMode::Field;
    double epsilon = 0.1;  ///< 0 selects the full-plane limit model
    double gamma = 0.0;
    double eta = 0.0;
    std::string vorticity_preset = "gaussian";  ///< gaussian|dipole|zero|tracer
    double grid_origin_x = -2.0;
    double grid_origin_y = -2.0;
    double grid_h = 0.0625;
    int grid_nx = 64;
    int grid_ny = 64;
    double dt = 2e-3;
    double t_final = 1.0;
    std::optional<double> blob_delta;  ///< empty = auto (2 x median mapped NN)
    std::string output_dir = "out";
    unsigned long long seed = 12345;
    unsigned long long snap_cadence = 0;  ///< 0 = initial and final snapshots only

    /// CLI-only filter for `check` mode; not a config-file key.
    std::optional<std::string> check_filter;

    bool operator==(const RunConfig& other) const;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses the config text. Throws ConfigError naming the offending line.
RunConfig parse_config(const std::string& text);

/// Canonical echo of the effective config (all keys, fixed order).
std::string format_config(const RunConfig& config);

}  // namespace slitflow
