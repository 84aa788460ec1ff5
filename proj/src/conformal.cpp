#include "slitflow/conformal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slitflow {

CPoint joukowski(CPoint w) {
    if (!(std::abs(w) > 0.0) || !is_finite(w)) {
        throw std::domain_error("joukowski: w must be finite and nonzero");
    }
    return 0.5 * (w + 1.0 / w);
}

double dist_to_slit(double epsilon, CPoint x) {
    const double dx = std::max(std::abs(x.real()) - epsilon, 0.0);
    return std::hypot(dx, x.imag());
}

MapJet slit_map_jet(CPoint z) {
    const double d = dist_to_slit(1.0, z);
    if (!is_finite(z) || d < kSlitMargin) {
        throw std::domain_error("slit_map_jet: point on or too close to the slit (dist=" +
                                std::to_string(d) + ")");
    }
    // sqrt(z-1)*sqrt(z+1) with principal roots keeps the cut on [-1,1].
    const CPoint s = std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
    const CPoint wp = z + s;
    const CPoint wm = z - s;
    // Roots multiply to 1; the exterior branch is the larger-modulus one.
    const double sigma = (std::abs(wp) >= std::abs(wm)) ? 1.0 : -1.0;
    MapJet jet;
    jet.value = (sigma > 0.0) ? wp : wm;
    jet.d1 = 1.0 + sigma * z / s;
    jet.d2 = -sigma / (s * s * s);
    return jet;
}

ScaledSlitMap::ScaledSlitMap(double eps) : epsilon(eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::domain_error("ScaledSlitMap: epsilon must be positive and finite");
    }
}

MapJet ScaledSlitMap::jet(CPoint x) const {
    MapJet j = slit_map_jet(x / epsilon);
    j.d1 /= epsilon;
    j.d2 /= epsilon * epsilon;
    return j;
}

ThickenedMap::ThickenedMap(double eps, double eta_) : epsilon(eps), eta(eta_) {
    if (!(eps > 0.0) || !(eta_ >= 0.0) || !std::isfinite(eps) || !std::isfinite(eta_)) {
        throw std::domain_error("ThickenedMap: requires epsilon > 0 and eta >= 0");
    }
}

double ThickenedMap::semi_axis_major() const {
    return 0.5 * epsilon * ((1.0 + eta) + 1.0 / (1.0 + eta));
}

double ThickenedMap::semi_axis_minor() const {
    return 0.5 * epsilon * ((1.0 + eta) - 1.0 / (1.0 + eta));
}

CPoint ThickenedMap::boundary_point(double theta) const {
    return CPoint(semi_axis_major() * std::cos(theta), semi_axis_minor() * std::sin(theta));
}

MapJet ThickenedMap::jet(CPoint x) const {
    const ScaledSlitMap base(epsilon);
    MapJet j = base.jet(x);
    if (std::abs(j.value) < (1.0 + eta) * (1.0 - 1e-12)) {
        throw std::domain_error("ThickenedMap: point inside the boundary ellipse (|T_eps|=" +
                                std::to_string(std::abs(j.value)) + " < 1+eta)");
    }
    const double f = 1.0 / (1.0 + eta);
    j.value *= f;
    j.d1 *= f;
    j.d2 *= f;
    return j;
}

}  // namespace slitflow
