#include "slitflow/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace slitflow {

double cutoff_profile(double s) {
    if (s <= 2.0) return 0.0;
    if (s >= 3.0) return 1.0;
    const double t = s - 2.0;
    // The quintic can overshoot 1 by an ulp near the junction.
    return std::min(1.0, t * t * t * (10.0 + t * (-15.0 + 6.0 * t)));
}

double cutoff_profile_d(double s) {
    if (s <= 2.0 || s >= 3.0) return 0.0;
    const double t = s - 2.0;
    const double u = t * (1.0 - t);
    return 30.0 * u * u;
}

double phi_eps(double epsilon, CPoint x) {
    const ScaledSlitMap map(epsilon);
    return cutoff_profile(std::abs(map.jet(x).value));
}

CPoint grad_phi_eps(double epsilon, CPoint x) {
    const ScaledSlitMap map(epsilon);
    const MapJet j = map.jet(x);
    const double r = std::abs(j.value);
    const double dp = cutoff_profile_d(r);
    if (dp == 0.0) return CPoint(0.0, 0.0);
    // Same core vector as harmonic_H, rotated by i there; the dot product of
    // the two evaluations cancels exactly.
    const CPoint core = std::conj(j.d1) * j.value;
    return dp * core / r;
}

CutoffNorms cutoff_norms(double epsilon, double p) {
    if (!(p >= 1.0) || !(p < 4.0)) {
        throw std::domain_error("cutoff_norms: requires 1 <= p < 4 (gradient not in L^4)");
    }
    const ScaledSlitMap map(epsilon);
    // {|T_eps| <= 3} is the ellipse with semi-axes 5eps/3 x 4eps/3. The
    // annulus {2 <= |T_eps| <= 3} where the gradient lives stays a distance
    // >= eps/4 from the slit endpoints, so plain midpoint quadrature
    // resolves the integrand; even cell counts keep midpoints off the slit
    // line.
    const double ax = 5.0 * epsilon / 3.0;
    const double ay = 4.0 * epsilon / 3.0;
    const double h = epsilon / 200.0;
    int nx = static_cast<int>(std::ceil(2.0 * ax / h));
    int ny = static_cast<int>(std::ceil(2.0 * ay / h));
    nx += nx % 2;
    ny += ny % 2;
    const Grid grid(CPoint(-0.5 * nx * h, -0.5 * ny * h), h, nx, ny);

    double area = 0.0;
    double grad_acc = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const CPoint x = grid.node(i, j);
            if (dist_to_slit(epsilon, x) < kSlitMargin * epsilon) continue;
            const MapJet jet = map.jet(x);
            const double r = std::abs(jet.value);
            if (r > 3.0) continue;
            area += grid.cell_area();
            const double dp = cutoff_profile_d(r);
            if (dp == 0.0) continue;
            const double g = dp * std::abs(jet.d1);
            grad_acc += grid.cell_area() * std::pow(g, p);
        }
    }
    CutoffNorms out;
    out.support_measure = area;
    out.grad_lp = std::pow(grad_acc, 1.0 / p);
    return out;
}

}  // namespace slitflow
