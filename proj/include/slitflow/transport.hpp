/// @file transport.hpp
/// @brief Lagrangian advection of the vorticity: particles move with the
/// assembled velocity and carry constant omega values (the transport
/// equation conserves them along trajectories since the velocity is
/// divergence free). Classical fixed-step RK4; a stage position that hits
/// the slit rejects the step rather than adapting.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "slitflow/biotsavart.hpp"

namespace slitflow {

struct TransportState {
    double time = 0.0;
    VortexParticleSet particles;
    ModelVariant model;
};

/// Per-step diagnostics. m and the L^p norms are pure functions of the
/// invariant particle data, so their constancy over a run is structural;
/// the meaningful drift measures are centroid, support and circulation.
struct ConservationReport {
    double t = 0.0;
    double m = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
    double l4 = 0.0;
    double linf = 0.0;
    double support_radius = 0.0;
    double max_step = 0.0;
};

ConservationReport conservation_report(const TransportState& state);

/// Sum(om_i h^2 x_i) / Sum(om_i h^2); throws when the total mass vanishes.
CPoint vorticity_centroid(const VortexParticleSet& particles);

struct StepRejected : std::runtime_error {
    explicit StepRejected(const std::string& what) : std::runtime_error(what) {}
};

/// One classical RK4 step of every particle under the model's velocity.
/// Values and cell area are untouched. Throws StepRejected if any stage
/// position is inadmissible for the model.
TransportState rk4_step(const TransportState& state, double dt);

struct RunResult {
    std::vector<TransportState> snapshots;
    std::vector<ConservationReport> reports;
    std::size_t steps_completed = 0;
    bool aborted = false;
    std::string abort_reason;
};

/// Repeated rk4_step until t_final (dt must divide t_final within one step
/// of rounding). Reports are emitted for the initial state and after every
/// step. Snapshots: initial and final always; with snapshot_cadence > 0 also
/// every cadence-th step. A rejected step aborts with partial output.
RunResult run(const TransportState& state0, double dt, double t_final,
              std::size_t snapshot_cadence = 0);

/// Vorticity presets. Particles sample omega0 at grid midpoints over the
/// support box (truncated at 1e-12 of the max); spacing h is the caller's
/// resolution knob.
VortexParticleSet init_gaussian_patch(double h);
VortexParticleSet init_dipole(double h);
VortexParticleSet init_zero();
VortexParticleSet init_tracer();

/// Gaussian bump exp(-|x-(0,2)|^2/0.25) used by the standard patch.
double gaussian_patch_omega(CPoint x);

}  // namespace slitflow
