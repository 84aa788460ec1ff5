/// @file complexplane.hpp
/// @brief Complex-plane primitives shared by every module: points, inversion,
/// perpendicular, polygonal contours with line-integral quadrature, uniform
/// grids, and discrete L^p norms.
///
/// The plane R^2 is identified with C throughout; a velocity vector (u1,u2)
/// is the complex number u1 + i*u2. All operations here are pure and the
/// types are immutable after construction, so concurrent read-only use is
/// safe. Sums run in a fixed order so repeated runs agree bitwise.

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace slitflow {

using CPoint = std::complex<double>;

inline bool is_finite(CPoint v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// (x1,x2) -> (-x2,x1); as a complex number this is i*v.
inline CPoint perp(CPoint v) { return CPoint(-v.imag(), v.real()); }

/// Euclidean dot product of two plane vectors stored as complex numbers.
inline double dot(CPoint a, CPoint b) {
    return a.real() * b.real() + a.imag() * b.imag();
}

inline double abs2(CPoint v) { return dot(v, v); }

/// v* = v/|v|^2, the inversion through the unit circle. Involution on |v|>0.
/// Throws std::domain_error on |v| == 0.
CPoint invert_star(CPoint v);

/// Evaluates both sides of | a/|a|^2 - b/|b|^2 | = |a-b|/(|a||b|).
/// Returns {lhs, rhs}; they agree to roundoff for any nonzero a, b.
std::pair<double, double> frac_identity_check(CPoint a, CPoint b);

/// Closed polygonal loop. Construction requires at least 3 finite vertices
/// and nonzero signed area; the counter-clockwise convention (signed area
/// > 0) is what every caller that means "positively oriented boundary" uses.
class Contour {
  public:
    explicit Contour(std::vector<CPoint> vertices);

    const std::vector<CPoint>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    double signed_area() const { return signed_area_; }
    bool is_ccw() const { return signed_area_ > 0.0; }

    /// Same polygon traversed the other way round.
    Contour reversed() const;

    /// Regular n-gon inscribed in the circle |x - center| = radius,
    /// counter-clockwise.
    static Contour circle(CPoint center, double radius, std::size_t n);

  private:
    std::vector<CPoint> vertices_;
    double signed_area_ = 0.0;
};

using FieldSampler = std::function<CPoint(CPoint)>;

/// Line integral of F . ds around the polygon, per-edge Simpson quadrature
/// on the endpoints and midpoint of each straight edge. The accumulation
/// order is canonical in the vertex geometry (not the traversal direction),
/// so reversing the vertex order negates the result exactly.
/// Throws std::domain_error if any sampled value is non-finite.
double contour_circulation(const FieldSampler& field, const Contour& c);

/// Uniform cell grid; node (i,j) is the midpoint of cell (i,j):
///   origin + ((i+0.5)h, (j+0.5)h),   0 <= i < nx, 0 <= j < ny,
/// enumerated row-major (j outer, i inner). Cell area is exactly h^2.
struct Grid {
    CPoint origin;
    double h = 0.0;
    int nx = 0;
    int ny = 0;

    Grid(CPoint origin_, double h_, int nx_, int ny_);

    CPoint node(int i, int j) const {
        return origin + CPoint((i + 0.5) * h, (j + 0.5) * h);
    }
    std::size_t count() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    }
    double cell_area() const { return h * h; }
    std::vector<CPoint> nodes() const;
};

/// (sum_i w_i |v_i|^p)^(1/p) for finite p >= 1; max_i |v_i| for p = inf.
/// Throws std::domain_error for p < 1, mismatched lengths, or negative
/// weights.
double discrete_lp_norm(std::span<const double> values,
                        std::span<const double> weights, double p);

}  // namespace slitflow
