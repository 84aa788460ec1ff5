/// @file biotsavart.hpp
/// @brief Velocity assembly from vorticity outside the slit, and the
/// full-plane limit model with a point vortex at the origin.
///
/// Exterior-slit law, with w = T_eps and y* = y/|y|^2:
///
///   u(x) = (1/2pi) DT^t(x) sum_i [ (w(x)-w(y_i))^perp / (|w(x)-w(y_i)|^2 + d^2)
///                                - (w(x)-w(y_i)*)^perp / (|w(x)-w(y_i)*|^2 + d^2) ] om_i h^2
///          + (gamma + m) H_eps(x)
///
/// where m = sum om_i h^2 and d is the blob regularization, applied in the
/// MAPPED plane so the image structure that enforces tangency survives.
/// For holomorphic maps DT^t acts on a vector v as conj(T') * v.
///
/// Limit model (slit shrunk to a point):
///
///   u(x) = sum_i (x-y_i)^perp / (2pi(|x-y_i|^2 + d^2)) om_i h^2
///          + gamma x^perp / (2pi |x|^2).
///
/// Models and particle sets are immutable inputs; evaluation is pure, with
/// particle sums in fixed index order. A term whose source position equals
/// the evaluation point exactly is skipped (a vortex does not advect
/// itself).

#pragma once

#include <variant>
#include <vector>

#include "slitflow/complexplane.hpp"
#include "slitflow/conformal.hpp"

namespace slitflow {

/// Lagrangian discretization of a vorticity field: positions, the carried
/// omega values, and the uniform cell area h^2 each particle represents.
struct VortexParticleSet {
    std::vector<CPoint> positions;
    std::vector<double> values;
    double cell_area = 0.0;

    VortexParticleSet() = default;
    VortexParticleSet(std::vector<CPoint> pos, std::vector<double> vals, double area);

    std::size_t count() const { return positions.size(); }
    /// m = sum_i om_i h^2, accumulated in index order.
    double mass() const;
};

/// Exterior-slit velocity model: the map (which carries eps), the boundary
/// circulation gamma (constant over the model's lifetime), and the mapped-
/// plane blob regularization.
struct ExteriorModel {
    ScaledSlitMap map;
    double gamma = 0.0;
    double blob_delta = 0.0;

    ExteriorModel(ScaledSlitMap m, double gamma_, double blob_delta_);
};

/// Full-plane limit model: point vortex gamma at the origin plus free-space
/// particle kernels.
struct LimitModel {
    double gamma = 0.0;
    double blob_delta = 0.0;
};

/// 2 * median mapped-plane nearest-neighbor distance of the particles
/// (0 when fewer than two particles). The standard default blob size.
double default_blob_delta(const ScaledSlitMap& map, const VortexParticleSet& particles);
/// Same rule in the physical plane, for the limit model.
double default_blob_delta(const VortexParticleSet& particles);

struct GreenEval {
    double value = 0.0;
};

/// Exterior Green's function
///   (1/2pi) ln( |w(x)-w(y)| / (|w(x)-w(y)*| |w(y)|) ),  w = T_eps.
/// Symmetric in (x,y); vanishes as either argument approaches the slit.
GreenEval green_function(const ScaledSlitMap& map, CPoint x, CPoint y);

/// Biot-Savart kernel K(x,y), optionally blob-regularized in the mapped
/// plane. Throws std::domain_error for coincident points with delta = 0.
CPoint kernel_K(const ScaledSlitMap& map, CPoint x, CPoint y, double blob_delta);

/// Harmonic field H_eps(x) = (1/2pi) DT^t(x) w(x)^perp / |w(x)|^2: the unique
/// decaying divergence- and curl-free field tangent to the slit with unit
/// circulation around it.
CPoint harmonic_H(const ScaledSlitMap& map, CPoint x);

/// H(x) = x^perp / (2pi |x|^2), the limit of H_eps.
CPoint limit_H(CPoint x);

struct DecomposedIntegrals {
    CPoint I1;
    CPoint I2;
    CPoint I2tilde;
};

/// Batch evaluator for the exterior model: maps the particles once, then
/// each velocity evaluation costs one jet plus a cheap pass over the pairs.
class ExteriorFieldEvaluator {
  public:
    ExteriorFieldEvaluator(const ExteriorModel& model, const VortexParticleSet& particles);

    CPoint velocity(CPoint x) const;
    DecomposedIntegrals decomposed(CPoint x) const;
    double mass() const { return mass_; }
    const ExteriorModel& model() const { return model_; }

  private:
    ExteriorModel model_;
    std::vector<CPoint> positions_;
    std::vector<CPoint> mapped_;
    std::vector<CPoint> mapped_star_;
    std::vector<double> weights_;
    double mass_ = 0.0;
};

/// Batch evaluator for the limit model (kept parallel to the exterior one).
class LimitFieldEvaluator {
  public:
    LimitFieldEvaluator(const LimitModel& model, const VortexParticleSet& particles);

    CPoint velocity(CPoint x) const;
    const LimitModel& model() const { return model_; }

  private:
    LimitModel model_;
    std::vector<CPoint> positions_;
    std::vector<double> weights_;
};

/// One-shot assemblies (the batch evaluators are preferred in loops).
CPoint velocity_exterior(const ExteriorModel& model, const VortexParticleSet& particles,
                         CPoint x);
CPoint velocity_limit(const LimitModel& model, const VortexParticleSet& particles, CPoint x);
DecomposedIntegrals decomposed_integrals(const ExteriorModel& model,
                                         const VortexParticleSet& particles, CPoint x);

/// Jump of the tangential velocity across the slit at interior station
/// s in (-1,1) (physical point eps*s), oriented so that the integral of
/// g * eps ds over the slit recovers the circulation. Probes at offsets
/// +-i*{1e-5, 5e-6} with Richardson extrapolation in the offset.
double jump_function_g(const ExteriorModel& model, const VortexParticleSet& particles,
                       double s);

using ModelVariant = std::variant<LimitModel, ExteriorModel>;
using FieldEvaluatorVariant = std::variant<LimitFieldEvaluator, ExteriorFieldEvaluator>;

FieldEvaluatorVariant make_field_evaluator(const ModelVariant& model,
                                           const VortexParticleSet& particles);
CPoint evaluate_velocity(const FieldEvaluatorVariant& ev, CPoint x);

}  // namespace slitflow
