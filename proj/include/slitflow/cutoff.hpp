/// @file cutoff.hpp
/// @brief The cutoff family Phi_eps(x) = Phi(|T_eps(x)|): a smooth indicator
/// of the region |T_eps| >= 3 that excises the slit neighborhood. Profile is
/// the quintic smoothstep on [2,3], so the junctions are C^2 and the
/// analytic gradient is clean. H_eps is everywhere orthogonal to
/// grad Phi_eps (both are scalar multiples of rotations of grad|T_eps|).

#pragma once

#include "slitflow/complexplane.hpp"
#include "slitflow/conformal.hpp"

namespace slitflow {

/// Monotone C^2 profile: 0 for s <= 2, 1 for s >= 3, quintic in between.
double cutoff_profile(double s);
/// Derivative of the profile (0 outside (2,3)).
double cutoff_profile_d(double s);

/// Phi(|T_eps(x)|). Throws for inadmissible x.
double phi_eps(double epsilon, CPoint x);

/// Analytic gradient Phi'(|T_eps|) * grad|T_eps| via the map jet, with
/// grad|T| = conj(T') T / |T|.
CPoint grad_phi_eps(double epsilon, CPoint x);

struct CutoffNorms {
    double support_measure = 0.0;  ///< area of { |T_eps| <= 3 }
    double grad_lp = 0.0;          ///< || grad Phi_eps ||_{L^p}
};

/// Midpoint-grid quadrature over the bounding box of the outer ellipse,
/// spacing <= eps/200. Requires 1 <= p < 4 (the gradient leaves L^p at
/// p = 4 because DT does).
CutoffNorms cutoff_norms(double epsilon, double p);

}  // namespace slitflow
