#include "slitflow/transport.hpp"

#include <cmath>
#include <limits>

namespace slitflow {

ConservationReport conservation_report(const TransportState& state) {
    const VortexParticleSet& p = state.particles;
    ConservationReport r;
    r.t = state.time;
    r.m = p.mass();
    std::vector<double> w(p.count(), p.cell_area);
    r.l1 = discrete_lp_norm(p.values, w, 1.0);
    r.l2 = discrete_lp_norm(p.values, w, 2.0);
    r.l4 = discrete_lp_norm(p.values, w, 4.0);
    r.linf = discrete_lp_norm(p.values, w, std::numeric_limits<double>::infinity());
    double sup = 0.0;
    for (const CPoint& x : p.positions) sup = std::max(sup, std::abs(x));
    r.support_radius = sup;
    r.max_step = 0.0;
    return r;
}

CPoint vorticity_centroid(const VortexParticleSet& particles) {
    CPoint num(0.0, 0.0);
    double den = 0.0;
    for (std::size_t i = 0; i < particles.count(); ++i) {
        const double w = particles.values[i] * particles.cell_area;
        num += w * particles.positions[i];
        den += w;
    }
    if (den == 0.0) throw std::domain_error("vorticity_centroid: zero total mass");
    return num / den;
}

namespace {

std::vector<CPoint> stage_velocities(const ModelVariant& model,
                                     const VortexParticleSet& tmpl,
                                     const std::vector<CPoint>& positions) {
    VortexParticleSet stage(positions, tmpl.values, tmpl.cell_area);
    const FieldEvaluatorVariant ev = make_field_evaluator(model, stage);
    std::vector<CPoint> vel(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        vel[i] = evaluate_velocity(ev, positions[i]);
    }
    return vel;
}

}  // namespace

TransportState rk4_step(const TransportState& state, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::domain_error("rk4_step: dt must be positive and finite");
    }
    const std::vector<CPoint>& x0 = state.particles.positions;
    const std::size_t n = x0.size();
    try {
        const std::vector<CPoint> k1 = stage_velocities(state.model, state.particles, x0);
        std::vector<CPoint> xs(n);
        for (std::size_t i = 0; i < n; ++i) xs[i] = x0[i] + 0.5 * dt * k1[i];
        const std::vector<CPoint> k2 = stage_velocities(state.model, state.particles, xs);
        for (std::size_t i = 0; i < n; ++i) xs[i] = x0[i] + 0.5 * dt * k2[i];
        const std::vector<CPoint> k3 = stage_velocities(state.model, state.particles, xs);
        for (std::size_t i = 0; i < n; ++i) xs[i] = x0[i] + dt * k3[i];
        const std::vector<CPoint> k4 = stage_velocities(state.model, state.particles, xs);

        TransportState next;
        next.time = state.time + dt;
        next.model = state.model;
        std::vector<CPoint> xn(n);
        for (std::size_t i = 0; i < n; ++i) {
            xn[i] = x0[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        next.particles = VortexParticleSet(std::move(xn), state.particles.values,
                                           state.particles.cell_area);
        return next;
    } catch (const std::domain_error& e) {
        throw StepRejected("rk4_step at t=" + std::to_string(state.time) +
                           ": stage position inadmissible (" + e.what() + ")");
    }
}

RunResult run(const TransportState& state0, double dt, double t_final,
              std::size_t snapshot_cadence) {
    if (!(t_final > 0.0) || !(dt > 0.0)) {
        throw std::domain_error("run: dt and t_final must be positive");
    }
    const double steps_real = t_final / dt;
    const long long nsteps = std::llround(steps_real);
    if (nsteps < 1 || std::abs(steps_real - static_cast<double>(nsteps)) > 1.0) {
        throw std::domain_error("run: dt must divide t_final within one step of rounding");
    }

    RunResult out;
    TransportState cur = state0;
    out.snapshots.push_back(cur);
    out.reports.push_back(conservation_report(cur));
    for (long long k = 1; k <= nsteps; ++k) {
        TransportState next;
        try {
            next = rk4_step(cur, dt);
        } catch (const StepRejected& e) {
            out.aborted = true;
            out.abort_reason = e.what();
            if (out.snapshots.back().time != cur.time) out.snapshots.push_back(cur);
            return out;
        }
        double max_step = 0.0;
        for (std::size_t i = 0; i < next.particles.count(); ++i) {
            max_step = std::max(max_step,
                                std::abs(next.particles.positions[i] - cur.particles.positions[i]));
        }
        cur = std::move(next);
        ConservationReport rep = conservation_report(cur);
        rep.max_step = max_step;
        out.reports.push_back(rep);
        out.steps_completed = static_cast<std::size_t>(k);
        const bool last = (k == nsteps);
        const bool cadence_hit =
            snapshot_cadence > 0 && static_cast<std::size_t>(k) % snapshot_cadence == 0;
        if (last || cadence_hit) out.snapshots.push_back(cur);
    }
    return out;
}

double gaussian_patch_omega(CPoint x) {
    static const CPoint center(0.0, 2.0);
    const double sigma = 0.5;
    return std::exp(-abs2(x - center) / (sigma * sigma));
}

namespace {

VortexParticleSet sample_preset(const std::function<double(CPoint)>& omega0, CPoint center,
                                double half_width, double h) {
    const int n = static_cast<int>(std::ceil(2.0 * half_width / h));
    const Grid grid(center - CPoint(0.5 * n * h, 0.5 * n * h), h, n, n);
    std::vector<CPoint> pos;
    std::vector<double> val;
    double peak = 0.0;
    std::vector<std::pair<CPoint, double>> raw;
    raw.reserve(grid.count());
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const CPoint x = grid.node(i, j);
            const double w = omega0(x);
            raw.emplace_back(x, w);
            peak = std::max(peak, std::abs(w));
        }
    }
    const double cut = 1e-12 * peak;
    for (const auto& [x, w] : raw) {
        if (std::abs(w) >= cut && w != 0.0) {
            pos.push_back(x);
            val.push_back(w);
        }
    }
    return VortexParticleSet(std::move(pos), std::move(val), h * h);
}

}  // namespace

VortexParticleSet init_gaussian_patch(double h) {
    const double radius = 0.5 * std::sqrt(std::log(1e12));
    return sample_preset(gaussian_patch_omega, CPoint(0.0, 2.0), radius, h);
}

VortexParticleSet init_dipole(double h) {
    const double sigma = 0.25;
    const CPoint cplus(0.7, 2.0), cminus(-0.7, 2.0);
    auto omega0 = [=](CPoint x) {
        return std::exp(-abs2(x - cplus) / (sigma * sigma)) -
               std::exp(-abs2(x - cminus) / (sigma * sigma));
    };
    const double radius = 0.7 + sigma * std::sqrt(std::log(1e12));
    return sample_preset(omega0, CPoint(0.0, 2.0), radius, h);
}

VortexParticleSet init_zero() { return VortexParticleSet({}, {}, 1.0); }

VortexParticleSet init_tracer() {
    return VortexParticleSet({CPoint(1.0, 0.0)}, {0.0}, 1.0);
}

}  // namespace slitflow
