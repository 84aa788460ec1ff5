/// @file conformal.hpp
/// @brief The exterior slit map and its scaled/thickened families.
///
/// T maps the plane minus the segment [-1,1] onto the exterior of the unit
/// disk, T(infinity) = infinity, T'(infinity) = 2. Explicitly
///
///     T(z) = z + sqrt(z-1)*sqrt(z+1),   branch with |T(z)| > 1,
///
/// where both square roots are principal, which keeps the branch cut exactly
/// on the segment. The two candidate roots z +- sqrt(z^2-1) multiply to 1,
/// so picking the larger modulus selects the exterior branch uniquely.
///
/// The scaled family T_eps(x) = T(x/eps) maps the exterior of the slit
/// eps*[-1,1]; the thickened family T_{eps,eta}(x) = T_eps(x)/(1+eta) maps
/// the exterior of a confocal ellipse with semi-axes
/// (eps/2)((1+eta) +- 1/(1+eta)).
///
/// Everything here is stateless and pure.

#pragma once

#include "slitflow/complexplane.hpp"

namespace slitflow {

/// Value and first two complex derivatives of a conformal map at one point.
struct MapJet {
    CPoint value;
    CPoint d1;
    CPoint d2;
};

/// Joukowski function G(w) = (w + 1/w)/2, the inverse of the slit map.
/// Throws std::domain_error at w = 0.
CPoint joukowski(CPoint w);

/// Euclidean distance from x to the closed segment [-eps, eps] x {0}.
double dist_to_slit(double epsilon, CPoint x);

/// Points closer to the slit than this (relative) margin are rejected.
inline constexpr double kSlitMargin = 1e-14;

/// Jet of the base map T at z. Requires dist_to_slit(1, z) >= 1e-14;
/// otherwise throws std::domain_error carrying the distance.
MapJet slit_map_jet(CPoint z);

/// T_eps(x) = T(x/eps): value T(x/eps), d1 = T'(x/eps)/eps,
/// d2 = T''(x/eps)/eps^2.
struct ScaledSlitMap {
    double epsilon = 1.0;

    explicit ScaledSlitMap(double eps);
    MapJet jet(CPoint x) const;
    bool admissible(CPoint x) const {
        return dist_to_slit(epsilon, x) >= kSlitMargin * epsilon;
    }
};

/// T_{eps,eta}(x) = T_eps(x)/(1+eta), defined strictly outside the closed
/// boundary ellipse. A relative forgiveness of 1e-12 lets exact boundary
/// points evaluate.
struct ThickenedMap {
    double epsilon = 1.0;
    double eta = 0.0;

    ThickenedMap(double eps, double eta_);
    MapJet jet(CPoint x) const;
    double semi_axis_major() const;
    double semi_axis_minor() const;
    /// Boundary point at ellipse parameter theta.
    CPoint boundary_point(double theta) const;
};

}  // namespace slitflow
