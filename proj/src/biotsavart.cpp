#include "slitflow/biotsavart.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slitflow {

VortexParticleSet::VortexParticleSet(std::vector<CPoint> pos, std::vector<double> vals,
                                     double area)
    : positions(std::move(pos)), values(std::move(vals)), cell_area(area) {
    if (positions.size() != values.size()) {
        throw std::domain_error("VortexParticleSet: positions/values length mismatch");
    }
    if (!(cell_area > 0.0) || !std::isfinite(cell_area)) {
        throw std::domain_error("VortexParticleSet: cell_area must be positive and finite");
    }
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!is_finite(positions[i]) || !std::isfinite(values[i])) {
            throw std::domain_error("VortexParticleSet: non-finite entry");
        }
    }
}

double VortexParticleSet::mass() const {
    double m = 0.0;
    for (double v : values) m += v * cell_area;
    return m;
}

ExteriorModel::ExteriorModel(ScaledSlitMap m, double gamma_, double blob_delta_)
    : map(m), gamma(gamma_), blob_delta(blob_delta_) {
    if (!std::isfinite(gamma) || !(blob_delta >= 0.0)) {
        throw std::domain_error("ExteriorModel: gamma finite and blob_delta >= 0 required");
    }
}

namespace {

double median_nn_distance(const std::vector<CPoint>& pts) {
    const std::size_t n = pts.size();
    if (n < 2) return 0.0;
    std::vector<double> nn(n);
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            best = std::min(best, abs2(pts[i] - pts[j]));
        }
        nn[i] = std::sqrt(best);
    }
    std::nth_element(nn.begin(), nn.begin() + n / 2, nn.end());
    return nn[n / 2];
}

}  // namespace

double default_blob_delta(const ScaledSlitMap& map, const VortexParticleSet& particles) {
    std::vector<CPoint> mapped(particles.count());
    for (std::size_t i = 0; i < particles.count(); ++i) {
        mapped[i] = map.jet(particles.positions[i]).value;
    }
    return 2.0 * median_nn_distance(mapped);
}

double default_blob_delta(const VortexParticleSet& particles) {
    return 2.0 * median_nn_distance(particles.positions);
}

GreenEval green_function(const ScaledSlitMap& map, CPoint x, CPoint y) {
    if (x == y) throw std::domain_error("green_function: coincident points");
    const CPoint wx = map.jet(x).value;
    const CPoint wy = map.jet(y).value;
    const double num = std::abs(wx - wy);
    const double den = std::abs(wx - invert_star(wy)) * std::abs(wy);
    return GreenEval{std::log(num / den) / (2.0 * M_PI)};
}

CPoint kernel_K(const ScaledSlitMap& map, CPoint x, CPoint y, double blob_delta) {
    const double d2 = blob_delta * blob_delta;
    if (x == y && d2 == 0.0) {
        throw std::domain_error("kernel_K: coincident points with zero blob_delta");
    }
    const MapJet jx = map.jet(x);
    const CPoint wy = map.jet(y).value;
    const CPoint a = jx.value - wy;
    const CPoint b = jx.value - invert_star(wy);
    const CPoint s = perp(a) / (abs2(a) + d2) - perp(b) / (abs2(b) + d2);
    return std::conj(jx.d1) * s / (2.0 * M_PI);
}

CPoint harmonic_H(const ScaledSlitMap& map, CPoint x) {
    const MapJet j = map.jet(x);
    // i * (conj(T') T): the same core vector whose unrotated scaling is the
    // cutoff gradient, so their dot product cancels to the last ulp.
    const CPoint core = std::conj(j.d1) * j.value;
    return perp(core) / (2.0 * M_PI * abs2(j.value));
}

CPoint limit_H(CPoint x) {
    const double n2 = abs2(x);
    if (!(n2 > 0.0)) throw std::domain_error("limit_H: evaluation at the origin");
    return perp(x) / (2.0 * M_PI * n2);
}

ExteriorFieldEvaluator::ExteriorFieldEvaluator(const ExteriorModel& model,
                                               const VortexParticleSet& particles)
    : model_(model), positions_(particles.positions) {
    const std::size_t n = particles.count();
    mapped_.resize(n);
    mapped_star_.resize(n);
    weights_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        mapped_[i] = model_.map.jet(positions_[i]).value;
        mapped_star_[i] = invert_star(mapped_[i]);
        weights_[i] = particles.values[i] * particles.cell_area;
    }
    mass_ = particles.mass();
}

CPoint ExteriorFieldEvaluator::velocity(CPoint x) const {
    const MapJet jx = model_.map.jet(x);
    const CPoint wx = jx.value;
    const double d2 = model_.blob_delta * model_.blob_delta;
    CPoint acc(0.0, 0.0);
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        const CPoint a = wx - mapped_[i];
        const CPoint b = wx - mapped_star_[i];
        const double da = abs2(a) + d2;
        // A vanishing regularized denominator marks self-interaction (or a
        // rounding collision in the mapped plane); the principal-value
        // convention drops the term.
        if (da == 0.0) continue;
        const double fa = weights_[i] / da;
        const double fb = weights_[i] / (abs2(b) + d2);
        acc += CPoint(-a.imag() * fa + b.imag() * fb, a.real() * fa - b.real() * fb);
    }
    const CPoint core = std::conj(jx.d1) * wx;
    const CPoint h = perp(core) / (2.0 * M_PI * abs2(wx));
    return std::conj(jx.d1) * acc / (2.0 * M_PI) + (model_.gamma + mass_) * h;
}

DecomposedIntegrals ExteriorFieldEvaluator::decomposed(CPoint x) const {
    const MapJet jx = model_.map.jet(x);
    const CPoint wx = jx.value;
    const double d2 = model_.blob_delta * model_.blob_delta;
    CPoint i1(0.0, 0.0);
    CPoint i2(0.0, 0.0);
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        const CPoint a = wx - mapped_[i];
        const CPoint b = wx - mapped_star_[i];
        const double da = abs2(a) + d2;
        if (da == 0.0) continue;
        i1 += perp(a) * (weights_[i] / da);
        i2 += perp(b) * (weights_[i] / (abs2(b) + d2));
    }
    DecomposedIntegrals out;
    out.I1 = i1;
    out.I2 = i2;
    out.I2tilde = -i2 + mass_ * perp(wx) / abs2(wx);
    return out;
}

LimitFieldEvaluator::LimitFieldEvaluator(const LimitModel& model,
                                         const VortexParticleSet& particles)
    : model_(model), positions_(particles.positions) {
    weights_.resize(particles.count());
    for (std::size_t i = 0; i < particles.count(); ++i) {
        weights_[i] = particles.values[i] * particles.cell_area;
    }
}

CPoint LimitFieldEvaluator::velocity(CPoint x) const {
    const double d2 = model_.blob_delta * model_.blob_delta;
    CPoint acc(0.0, 0.0);
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        const CPoint a = x - positions_[i];
        const double da = abs2(a) + d2;
        if (da == 0.0) continue;
        const double f = weights_[i] / da;
        acc += CPoint(-a.imag() * f, a.real() * f);
    }
    acc /= 2.0 * M_PI;
    if (model_.gamma != 0.0) {
        if (abs2(x) == 0.0) {
            throw std::domain_error("velocity_limit: evaluation at the origin with gamma != 0");
        }
        acc += model_.gamma * limit_H(x);
    }
    return acc;
}

CPoint velocity_exterior(const ExteriorModel& model, const VortexParticleSet& particles,
                         CPoint x) {
    return ExteriorFieldEvaluator(model, particles).velocity(x);
}

CPoint velocity_limit(const LimitModel& model, const VortexParticleSet& particles, CPoint x) {
    return LimitFieldEvaluator(model, particles).velocity(x);
}

DecomposedIntegrals decomposed_integrals(const ExteriorModel& model,
                                         const VortexParticleSet& particles, CPoint x) {
    return ExteriorFieldEvaluator(model, particles).decomposed(x);
}

double jump_function_g(const ExteriorModel& model, const VortexParticleSet& particles,
                       double s) {
    if (!(std::abs(s) < 1.0)) {
        throw std::domain_error("jump_function_g: station must satisfy |s| < 1");
    }
    const ExteriorFieldEvaluator ev(model, particles);
    const double xs = model.map.epsilon * s;
    auto jump_at = [&](double off) {
        const CPoint lower = ev.velocity(CPoint(xs, -off));
        const CPoint upper = ev.velocity(CPoint(xs, off));
        return lower.real() - upper.real();
    };
    const double j1 = jump_at(1e-5);
    const double j2 = jump_at(5e-6);
    return 2.0 * j2 - j1;
}

FieldEvaluatorVariant make_field_evaluator(const ModelVariant& model,
                                           const VortexParticleSet& particles) {
    if (std::holds_alternative<ExteriorModel>(model)) {
        return ExteriorFieldEvaluator(std::get<ExteriorModel>(model), particles);
    }
    return LimitFieldEvaluator(std::get<LimitModel>(model), particles);
}

CPoint evaluate_velocity(const FieldEvaluatorVariant& ev, CPoint x) {
    return std::visit([&](const auto& e) { return e.velocity(x); }, ev);
}

}  // namespace slitflow
