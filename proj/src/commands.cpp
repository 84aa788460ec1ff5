#include "slitflow/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "slitflow/analysis.hpp"
#include "slitflow/csv.hpp"
#include "slitflow/cutoff.hpp"
#include "slitflow/transport.hpp"

namespace slitflow {

namespace fs = std::filesystem;

VortexParticleSet particles_from_config(const RunConfig& config) {
    if (config.vorticity_preset == "gaussian") return init_gaussian_patch(config.grid_h);
    if (config.vorticity_preset == "dipole") return init_dipole(config.grid_h);
    if (config.vorticity_preset == "tracer") return init_tracer();
    return init_zero();
}

ModelVariant model_from_config(const RunConfig& config, const VortexParticleSet& particles) {
    if (config.epsilon > 0.0) {
        const ScaledSlitMap map(config.epsilon);
        const double delta =
            config.blob_delta ? *config.blob_delta : default_blob_delta(map, particles);
        return ExteriorModel(map, config.gamma, delta);
    }
    const double delta = config.blob_delta ? *config.blob_delta : default_blob_delta(particles);
    return LimitModel{config.gamma, delta};
}

namespace {

void echo_config(const RunConfig& config) {
    fs::create_directories(config.output_dir);
    std::ofstream out(fs::path(config.output_dir) / "effective_config.cfg", std::ios::binary);
    out << format_config(config);
}

}  // namespace

int cmd_probe_map(const RunConfig& config) {
    if (!(config.epsilon > 0.0)) {
        std::cerr << "probe-map: requires epsilon > 0\n";
        return 2;
    }
    const Grid grid(CPoint(config.grid_origin_x, config.grid_origin_y), config.grid_h,
                    config.grid_nx, config.grid_ny);
    CsvWriter csv(fs::path(config.output_dir) / "map.csv",
                  "x,y,t_re,t_im,dt_re,dt_im,d2t_re,d2t_im,abs_t,admissible");
    const ScaledSlitMap scaled(config.epsilon);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const CPoint x = grid.node(i, j);
            std::vector<std::string> row{format_double(x.real()), format_double(x.imag())};
            try {
                const MapJet jet = config.eta > 0.0
                                       ? ThickenedMap(config.epsilon, config.eta).jet(x)
                                       : scaled.jet(x);
                row.insert(row.end(),
                           {format_double(jet.value.real()), format_double(jet.value.imag()),
                            format_double(jet.d1.real()), format_double(jet.d1.imag()),
                            format_double(jet.d2.real()), format_double(jet.d2.imag()),
                            format_double(std::abs(jet.value)), "1"});
            } catch (const std::domain_error&) {
                row.insert(row.end(), {"", "", "", "", "", "", "", "0"});
            }
            csv.row(row);
        }
    }
    return 0;
}

int cmd_field(const RunConfig& config) {
    const Grid grid(CPoint(config.grid_origin_x, config.grid_origin_y), config.grid_h,
                    config.grid_nx, config.grid_ny);
    const VortexParticleSet particles = particles_from_config(config);
    const ModelVariant model = model_from_config(config, particles);
    const FieldEvaluatorVariant ev = make_field_evaluator(model, particles);
    const bool exterior = config.epsilon > 0.0;

    CsvWriter csv(fs::path(config.output_dir) / "field.csv", "x,y,ux,uy,phi_eps,admissible");
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const CPoint x = grid.node(i, j);
            std::vector<std::string> row{format_double(x.real()), format_double(x.imag())};
            try {
                const CPoint u = evaluate_velocity(ev, x);
                const double phi = exterior ? phi_eps(config.epsilon, x) : 1.0;
                row.insert(row.end(), {format_double(u.real()), format_double(u.imag()),
                                       format_double(phi), "1"});
            } catch (const std::domain_error&) {
                row.insert(row.end(), {"", "", "", "0"});
            }
            csv.row(row);
        }
    }
    return 0;
}

int cmd_advect(const RunConfig& config) {
    const VortexParticleSet particles = particles_from_config(config);
    const ModelVariant model = model_from_config(config, particles);
    const TransportState s0{0.0, particles, model};
    const RunResult res = run(s0, config.dt, config.t_final, config.snap_cadence);

    for (const TransportState& snap : res.snapshots) {
        const long long k = std::llround(snap.time / config.dt);
        CsvWriter csv(fs::path(config.output_dir) / ("snap_" + std::to_string(k) + ".csv"),
                      "id,x,y,omega");
        for (std::size_t i = 0; i < snap.particles.count(); ++i) {
            csv.row({std::to_string(i), format_double(snap.particles.positions[i].real()),
                     format_double(snap.particles.positions[i].imag()),
                     format_double(snap.particles.values[i])});
        }
    }
    {
        CsvWriter csv(fs::path(config.output_dir) / "conservation.csv",
                      "t,m,l1,l2,l4,linf,support_radius,max_step");
        for (const ConservationReport& rep : res.reports) {
            csv.row_numbers({rep.t, rep.m, rep.l1, rep.l2, rep.l4, rep.linf, rep.support_radius,
                             rep.max_step});
        }
    }
    std::ofstream status(fs::path(config.output_dir) / "status.txt", std::ios::binary);
    if (res.aborted) {
        status << "aborted after " << res.steps_completed << " steps: " << res.abort_reason
               << "\n";
        std::cerr << "advect: " << res.abort_reason << " (partial outputs retained)\n";
        return 1;
    }
    status << "ok: " << res.steps_completed << " steps\n";
    return 0;
}

int cmd_sweep_eps(const RunConfig& config) {
    const VortexParticleSet particles = particles_from_config(config);
    CsvWriter csv(fs::path(config.output_dir) / "sweep.csv",
                  "eps,sup_I1,sup_I2tilde,h_l1_diff,circulation");
    std::vector<CPoint> probes;
    for (double rad : {0.6, 1.2, 2.4, 4.0}) {
        for (int ia = 0; ia < 12; ++ia) {
            const double th = 2.0 * M_PI * (ia + 0.29) / 12.0;
            probes.push_back(rad * CPoint(std::cos(th), std::sin(th)));
        }
    }
    const Contour ring = Contour::circle(CPoint(0, 0), 5.0, 512);
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
        const ScaledSlitMap map(eps);
        const double delta =
            config.blob_delta ? *config.blob_delta : default_blob_delta(map, particles);
        const ExteriorModel model(map, config.gamma, delta);
        const ExteriorFieldEvaluator ev(model, particles);
        double sup1 = 0.0, sup2 = 0.0;
        for (const CPoint& x : probes) {
            const DecomposedIntegrals dec = ev.decomposed(x);
            sup1 = std::max(sup1, std::abs(dec.I1));
            sup2 = std::max(sup2, std::abs(dec.I2tilde));
        }
        double hdiff = 0.0;
        const double h = 0.02;
        const int n = static_cast<int>(std::ceil(4.0 / h));
        const Grid grid(CPoint(-2.0, -2.0), h, n, n);
        for (int j = 0; j < grid.ny; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                const CPoint x = grid.node(i, j);
                if (abs2(x) > 4.0 || dist_to_slit(eps, x) < kSlitMargin * eps) continue;
                hdiff += std::abs(harmonic_H(map, x) - limit_H(x)) * grid.cell_area();
            }
        }
        const double circ = contour_circulation([&](CPoint x) { return ev.velocity(x); }, ring);
        csv.row_numbers({eps, sup1, sup2, hdiff, circ});
    }
    return 0;
}

int cmd_check(const RunConfig& config) {
    const CheckContext ctx{fs::path(config.output_dir), config.seed};
    std::vector<const CheckEntry*> selected;
    for (const CheckEntry& entry : check_registry()) {
        if (!config.check_filter || entry.name == *config.check_filter) {
            selected.push_back(&entry);
        }
    }
    if (selected.empty()) {
        std::cerr << "check: unknown check name '" << *config.check_filter << "'\n";
        return 2;
    }
    CsvWriter summary(fs::path(config.output_dir) / "summary.csv", "name,status,measured,tolerance");
    bool all_pass = true;
    for (const CheckEntry* entry : selected) {
        const CheckResult res = entry->fn(ctx);
        const SubCheck& w = res.worst();
        summary.row({res.name, res.passed ? "pass" : "fail", format_double(w.measured),
                     format_double(w.tolerance)});
        std::cout << (res.passed ? "PASS " : "FAIL ") << res.name << " (" << w.label << ": "
                  << format_double(w.measured) << " vs " << format_double(w.tolerance) << ")\n";
        if (!res.passed) {
            for (const SubCheck& s : res.subchecks) {
                if (!s.passed) {
                    std::cout << "    failed: " << s.label << " measured "
                              << format_double(s.measured) << " tolerance "
                              << format_double(s.tolerance) << "\n";
                }
            }
        }
        all_pass = all_pass && res.passed;
    }
    return all_pass ? 0 : 1;
}

int run_command(const RunConfig& config) {
    echo_config(config);
    switch (config.mode) {
        case RunMode::ProbeMap: return cmd_probe_map(config);
        case RunMode::Field: return cmd_field(config);
        case RunMode::Advect: return cmd_advect(config);
        case RunMode::SweepEps: return cmd_sweep_eps(config);
        case RunMode::Check: return cmd_check(config);
    }
    return 2;
}

}  // namespace slitflow
