#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slitflow/transport.hpp"

using namespace slitflow;

namespace {

VortexParticleSet random_cloud(unsigned seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::uniform_real_distribution<double> w(-1.0, 1.0);
    std::vector<CPoint> pos;
    std::vector<double> val;
    for (std::size_t i = 0; i < n; ++i) {
        pos.emplace_back(u(rng), u(rng));
        val.push_back(w(rng));
    }
    return VortexParticleSet(std::move(pos), std::move(val), 0.04);
}

}  // namespace

TEST_CASE("zero-velocity configuration stays put") {
    const TransportState s0{0.0, init_tracer(), LimitModel{0.0, 0.0}};
    const TransportState s1 = rk4_step(s0, 0.1);
    CHECK(s1.particles.positions[0] == CPoint(1.0, 0.0));
    CHECK(s1.time == doctest::Approx(0.1));
}

TEST_CASE("point-vortex tracer quarter orbit") {
    // Angular speed 1/(2 pi) at radius 1: a quarter turn takes pi^2.
    const TransportState s0{0.0, init_tracer(), LimitModel{1.0, 0.0}};
    const RunResult res = run(s0, 1e-3, M_PI * M_PI);
    const CPoint xT = res.snapshots.back().particles.positions[0];
    CHECK(std::abs(xT - CPoint(0.0, 1.0)) <= 2e-4);
}

TEST_CASE("carried values and areas never change") {
    const VortexParticleSet cloud = random_cloud(5, 24);
    const TransportState s0{0.0, cloud, LimitModel{0.2, 0.05}};
    const RunResult res = run(s0, 0.01, 0.2);
    const VortexParticleSet& end = res.snapshots.back().particles;
    REQUIRE(end.count() == cloud.count());
    CHECK(end.cell_area == cloud.cell_area);
    for (std::size_t i = 0; i < cloud.count(); ++i) {
        CHECK(end.values[i] == cloud.values[i]);  // bitwise
    }
    // m is a pure function of the invariant data.
    CHECK(end.mass() == cloud.mass());
}

TEST_CASE("two-blob centroid is invariant") {
    // Same-sign pair in free space: the blob system conserves the vorticity
    // centroid exactly (kernel antisymmetry), so any drift is integrator
    // roundoff.
    const double h = 0.2, sigma = 0.25;
    std::vector<CPoint> pos;
    std::vector<double> val;
    const Grid grid(CPoint(-1.5 + 0.5 * h, -1.5 + 0.5 * h), h, 14, 14);
    for (int j = 0; j < 14; ++j) {
        for (int i = 0; i < 14; ++i) {
            const CPoint x = grid.node(i, j);
            const double w = std::exp(-abs2(x - CPoint(0.6, 0)) / (sigma * sigma)) +
                             std::exp(-abs2(x + CPoint(0.6, 0)) / (sigma * sigma));
            if (w >= 1e-12) {
                pos.push_back(x);
                val.push_back(w);
            }
        }
    }
    const VortexParticleSet blobs(pos, val, h * h);
    const TransportState s0{0.0, blobs, LimitModel{0.0, default_blob_delta(blobs)}};
    const RunResult res = run(s0, 2e-3, 0.25);
    const CPoint c0 = vorticity_centroid(res.snapshots.front().particles);
    const CPoint c1 = vorticity_centroid(res.snapshots.back().particles);
    CHECK(std::abs(c1 - c0) <= 1e-5);
}

TEST_CASE("time reversal returns the cloud") {
    const VortexParticleSet cloud = random_cloud(11, 16);
    const LimitModel fwd{0.3, 0.05};
    const RunResult out = run(TransportState{0.0, cloud, fwd}, 1e-3, 0.5);

    // Negating gamma and every carried value negates the velocity exactly.
    VortexParticleSet turned = out.snapshots.back().particles;
    for (double& v : turned.values) v = -v;
    const LimitModel bwd{-0.3, 0.05};
    const RunResult back = run(TransportState{0.0, turned, bwd}, 1e-3, 0.5);

    double worst = 0.0;
    for (std::size_t i = 0; i < cloud.count(); ++i) {
        worst = std::max(worst,
                         std::abs(back.snapshots.back().particles.positions[i] -
                                  cloud.positions[i]));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("a stage position on the slit rejects the step") {
    // The particle sits on the slit itself, so the very first stage fails.
    const VortexParticleSet bad({CPoint(0.0, 0.0)}, {1.0}, 1.0);
    const ExteriorModel model(ScaledSlitMap(1.0), 0.0, 0.1);
    const TransportState s0{0.0, bad, model};
    CHECK_THROWS_AS(rk4_step(s0, 0.01), StepRejected);

    const RunResult res = run(s0, 0.01, 0.1);
    CHECK(res.aborted);
    CHECK(res.steps_completed == 0);
    CHECK(!res.abort_reason.empty());
    CHECK(res.reports.size() == 1);  // initial report retained
}

TEST_CASE("run validates the time grid") {
    const TransportState s0{0.0, init_tracer(), LimitModel{0.0, 0.0}};
    CHECK_THROWS_AS(run(s0, 0.5, 0.1), std::domain_error);
    CHECK_THROWS_AS(run(s0, -0.1, 1.0), std::domain_error);
}

TEST_CASE("empty run completes with empty-set reports") {
    const TransportState s0{0.0, init_zero(), LimitModel{1.0, 0.0}};
    const RunResult res = run(s0, 0.1, 0.5);
    CHECK(!res.aborted);
    CHECK(res.reports.size() == 6);
    CHECK(res.reports.back().m == 0.0);
    CHECK(res.reports.back().support_radius == 0.0);
}

TEST_CASE("snapshot cadence") {
    const VortexParticleSet cloud = random_cloud(2, 4);
    const TransportState s0{0.0, cloud, LimitModel{0.0, 0.05}};
    // cadence 0: initial and final only
    CHECK(run(s0, 0.01, 0.1).snapshots.size() == 2);
    // cadence 2 over 10 steps: 0,2,4,6,8,10 -> 6 snapshots, final not doubled
    CHECK(run(s0, 0.01, 0.1, 2).snapshots.size() == 6);
}

TEST_CASE("conservation report arithmetic") {
    std::vector<CPoint> pos;
    std::vector<double> val;
    for (int i = 0; i < 100; ++i) {
        pos.emplace_back(0.05 + 0.1 * (i % 10) - 0.5, 0.05 + 0.1 * (i / 10) - 0.5);
        val.push_back(1.0);
    }
    const VortexParticleSet uniform(pos, val, 0.01);
    const TransportState st{0.0, uniform, LimitModel{0.0, 0.0}};
    const ConservationReport rep = conservation_report(st);
    CHECK(rep.m == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.l1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.linf == 1.0);

    // Homogeneity: doubling the values doubles m and every finite-p norm.
    VortexParticleSet doubled = uniform;
    for (double& v : doubled.values) v *= 2.0;
    const ConservationReport rep2 = conservation_report(TransportState{0.0, doubled, st.model});
    CHECK(rep2.m == doctest::Approx(2.0 * rep.m).epsilon(1e-14));
    CHECK(rep2.l1 == doctest::Approx(2.0 * rep.l1).epsilon(1e-14));
    CHECK(rep2.l2 == doctest::Approx(2.0 * rep.l2).epsilon(1e-14));
    CHECK(rep2.l4 == doctest::Approx(2.0 * rep.l4).epsilon(1e-14));

    // Reflection across the imaginary axis changes no report entry.
    VortexParticleSet mirrored = uniform;
    for (CPoint& p : mirrored.positions) p = CPoint(-p.real(), p.imag());
    const ConservationReport rep3 =
        conservation_report(TransportState{0.0, mirrored, st.model});
    CHECK(rep3.m == rep.m);
    CHECK(rep3.l1 == rep.l1);
    CHECK(rep3.l2 == rep.l2);
    CHECK(rep3.l4 == rep.l4);
    CHECK(rep3.linf == rep.linf);
    CHECK(rep3.support_radius == doctest::Approx(rep.support_radius).epsilon(1e-14));
}

TEST_CASE("preset particle sets") {
    const VortexParticleSet patch = init_gaussian_patch(0.15);
    CHECK(patch.count() > 700);
    CHECK(patch.mass() == doctest::Approx(M_PI * 0.25).epsilon(1e-3));

    const VortexParticleSet dip = init_dipole(0.11);
    CHECK(std::abs(dip.mass()) <= 1e-12);  // antisymmetric pair
    CHECK(dip.count() > 400);

    CHECK(init_zero().count() == 0);
    CHECK(init_tracer().count() == 1);
    CHECK(init_tracer().values[0] == 0.0);
}
