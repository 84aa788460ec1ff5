#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slitflow/complexplane.hpp"

using namespace slitflow;

TEST_CASE("perp rotates by a quarter turn") {
    CHECK(perp(CPoint(1, 0)) == CPoint(0, 1));
    CHECK(perp(CPoint(0, 1)) == CPoint(-1, 0));
    CHECK(perp(CPoint(3, -2)) == CPoint(2, 3));
    // perp o perp = -identity, exactly.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const CPoint v(u(rng), u(rng));
        CHECK(perp(perp(v)) == -v);
    }
}

TEST_CASE("invert_star basics and involution") {
    CHECK(invert_star(CPoint(2, 0)) == CPoint(0.5, 0));
    CHECK(invert_star(CPoint(0, 1)) == CPoint(0, 1));
    CHECK(invert_star(CPoint(1, 1)) == CPoint(0.5, 0.5));
    CHECK_THROWS_AS(invert_star(CPoint(0, 0)), std::domain_error);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const CPoint v(u(rng), u(rng));
        if (std::abs(v) < 1e-3) continue;
        const CPoint w = invert_star(invert_star(v));
        CHECK(std::abs(w - v) <= 1e-14 * std::abs(v));
        CHECK(std::abs(invert_star(v)) == doctest::Approx(1.0 / std::abs(v)).epsilon(1e-13));
    }
}

TEST_CASE("frac identity on stated examples and random annulus pairs") {
    {
        const auto [lhs, rhs] = frac_identity_check(CPoint(1, 0), CPoint(0, 1));
        CHECK(lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    }
    {
        const auto [lhs, rhs] = frac_identity_check(CPoint(2, 0), CPoint(1, 0));
        CHECK(lhs == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(rhs == doctest::Approx(0.5).epsilon(1e-14));
    }
    CHECK_THROWS_AS(frac_identity_check(CPoint(0, 0), CPoint(1, 0)), std::domain_error);

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto annulus = [&]() {
        const double r = std::sqrt(0.01 + (100.0 - 0.01) * u01(rng));
        const double th = 2.0 * M_PI * u01(rng);
        return r * CPoint(std::cos(th), std::sin(th));
    };
    for (int i = 0; i < 10000; ++i) {
        const auto [lhs, rhs] = frac_identity_check(annulus(), annulus());
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + rhs));
    }
}

TEST_CASE("contour circulation: unit vortex around the unit circle") {
    // Exact value 1 for any loop winding once around the origin.
    const Contour c = Contour::circle(CPoint(0, 0), 1.0, 256);
    auto vortex = [](CPoint x) { return perp(x) / (2.0 * M_PI * abs2(x)); };
    CHECK(contour_circulation(vortex, c) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("contour circulation: constant and gradient fields vanish") {
    const Contour sq(std::vector<CPoint>{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    auto constant = [](CPoint) { return CPoint(0.3, -0.7); };
    CHECK(std::abs(contour_circulation(constant, sq)) <= 1e-12);
    auto grad = [](CPoint x) { return x; };
    CHECK(std::abs(contour_circulation(grad, sq)) <= 1e-12);
}

TEST_CASE("contour circulation is orientation-odd, exactly") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    std::vector<CPoint> verts;
    for (int k = 0; k < 17; ++k) {
        const double th = 2.0 * M_PI * k / 17.0;
        const double r = 1.0 + u(rng);
        verts.push_back(r * CPoint(std::cos(th), std::sin(th)));
    }
    const Contour c(verts);
    const Contour rev = c.reversed();
    auto field = [](CPoint x) {
        return perp(x) / (2.0 * M_PI * (abs2(x) + 0.01)) + CPoint(0.2 * x.imag(), -0.1 * x.real());
    };
    const double fwd = contour_circulation(field, c);
    const double bwd = contour_circulation(field, rev);
    CHECK(bwd == -fwd);  // bitwise
}

TEST_CASE("contour validation") {
    CHECK_THROWS_AS(Contour(std::vector<CPoint>{{0, 0}, {1, 0}}), std::domain_error);
    // Degenerate (zero area) polygon.
    CHECK_THROWS_AS(Contour(std::vector<CPoint>{{0, 0}, {1, 0}, {2, 0}}), std::domain_error);
    auto bad = [](CPoint x) {
        return x.real() > 0.5 ? CPoint(std::nan(""), 0.0) : CPoint(1.0, 0.0);
    };
    const Contour sq(std::vector<CPoint>{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    CHECK_THROWS_AS(contour_circulation(bad, sq), std::domain_error);
}

TEST_CASE("grid enumeration is row-major with exact cell area") {
    const Grid g(CPoint(-1, -1), 0.5, 4, 2);
    CHECK(g.cell_area() == 0.25);
    const auto nodes = g.nodes();
    REQUIRE(nodes.size() == 8);
    CHECK(nodes[0] == CPoint(-0.75, -0.75));
    CHECK(nodes[1] == CPoint(-0.25, -0.75));
    CHECK(nodes[4] == CPoint(-0.75, -0.25));
    CHECK_THROWS_AS(Grid(CPoint(0, 0), -1.0, 2, 2), std::domain_error);
}

TEST_CASE("discrete lp norm") {
    const std::vector<double> v1{1, 1, 1, 1}, w1{0.25, 0.25, 0.25, 0.25};
    CHECK(discrete_lp_norm(v1, w1, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<double> v2{2}, w2{1};
    CHECK(discrete_lp_norm(v2, w2, std::numeric_limits<double>::infinity()) == 2.0);
    const std::vector<double> v3{3, 4}, w3{1, 1};
    CHECK(discrete_lp_norm(v3, w3, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK_THROWS_AS(discrete_lp_norm(v3, w3, 0.5), std::domain_error);
    const std::vector<double> wneg{1, -1};
    CHECK_THROWS_AS(discrete_lp_norm(v3, wneg, 2.0), std::domain_error);
}
