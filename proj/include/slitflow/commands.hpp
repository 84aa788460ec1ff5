/// @file commands.hpp
/// @brief Batch drivers behind the CLI subcommands. Each command owns its
/// output directory, echoes the effective config there, and reports through
/// exit codes: 0 success, 1 check failure, 2 usage or infrastructure error.

#pragma once

#include "slitflow/biotsavart.hpp"
#include "slitflow/config.hpp"

namespace slitflow {

/// Particle set for the configured preset, sampled at spacing grid_h.
VortexParticleSet particles_from_config(const RunConfig& config);

/// Velocity model for the configured epsilon (0 = limit model), gamma and
/// blob_delta ('auto' resolves against the preset particles).
ModelVariant model_from_config(const RunConfig& config, const VortexParticleSet& particles);

int cmd_probe_map(const RunConfig& config);
int cmd_field(const RunConfig& config);
int cmd_advect(const RunConfig& config);
int cmd_sweep_eps(const RunConfig& config);
int cmd_check(const RunConfig& config);

/// Dispatch on config.mode; writes the effective-config echo first.
int run_command(const RunConfig& config);

}  // namespace slitflow
