#include "slitflow/complexplane.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slitflow {

CPoint invert_star(CPoint v) {
    const double n2 = abs2(v);
    if (!(n2 > 0.0) || !is_finite(v)) {
        throw std::domain_error("invert_star: zero or non-finite input");
    }
    return v / n2;
}

std::pair<double, double> frac_identity_check(CPoint a, CPoint b) {
    const double na = std::abs(a);
    const double nb = std::abs(b);
    if (!(na > 0.0) || !(nb > 0.0) || !is_finite(a) || !is_finite(b)) {
        throw std::domain_error("frac_identity_check: inputs must be finite and nonzero");
    }
    const double lhs = std::abs(invert_star(a) - invert_star(b));
    const double rhs = std::abs(a - b) / (na * nb);
    return {lhs, rhs};
}

namespace {

double polygon_signed_area(const std::vector<CPoint>& v) {
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const CPoint& a = v[i];
        const CPoint& b = v[(i + 1) % v.size()];
        twice += a.real() * b.imag() - b.real() * a.imag();
    }
    return 0.5 * twice;
}

bool lex_less(CPoint a, CPoint b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

Contour::Contour(std::vector<CPoint> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) {
        throw std::domain_error("Contour: needs at least 3 vertices");
    }
    for (const CPoint& v : vertices_) {
        if (!is_finite(v)) throw std::domain_error("Contour: non-finite vertex");
    }
    signed_area_ = polygon_signed_area(vertices_);
    if (signed_area_ == 0.0) {
        throw std::domain_error("Contour: degenerate (zero signed area)");
    }
}

Contour Contour::reversed() const {
    std::vector<CPoint> rev(vertices_.rbegin(), vertices_.rend());
    return Contour(std::move(rev));
}

Contour Contour::circle(CPoint center, double radius, std::size_t n) {
    std::vector<CPoint> v;
    v.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
        v.push_back(center + radius * CPoint(std::cos(th), std::sin(th)));
    }
    return Contour(std::move(v));
}

double contour_circulation(const FieldSampler& field, const Contour& c) {
    const std::vector<CPoint>& v = c.vertices();
    const std::size_t n = v.size();

    // Canonical walk: start at the lexicographically smallest vertex and head
    // toward its smaller neighbor. Edge terms and their accumulation order
    // then depend only on the polygon's geometry; the input traversal
    // direction enters as a global sign, which makes reversal exact.
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (lex_less(v[i], v[i0])) i0 = i;
    }
    const CPoint next = v[(i0 + 1) % n];
    const CPoint prev = v[(i0 + n - 1) % n];
    const bool walk_forward = lex_less(next, prev);
    const double sign = walk_forward ? 1.0 : -1.0;

    auto sample = [&field](CPoint x) {
        const CPoint f = field(x);
        if (!is_finite(f)) {
            throw std::domain_error("contour_circulation: non-finite field sample at (" +
                                    std::to_string(x.real()) + "," + std::to_string(x.imag()) + ")");
        }
        return f;
    };

    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t ia, ib;
        if (walk_forward) {
            ia = (i0 + k) % n;
            ib = (i0 + k + 1) % n;
        } else {
            ia = (i0 + n - k) % n;
            ib = (i0 + n - k - 1) % n;
        }
        const CPoint a = v[ia];
        const CPoint b = v[ib];
        const CPoint e = b - a;
        const CPoint fa = sample(a);
        const CPoint fm = sample(0.5 * (a + b));
        const CPoint fb = sample(b);
        // Simpson on the edge; endpoint terms added first (commutatively) so
        // the reversed polygon reproduces the identical rounding sequence.
        const double term = ((dot(fa, e) + dot(fb, e)) + 4.0 * dot(fm, e)) / 6.0;
        acc += sign * term;
    }
    return acc;
}

Grid::Grid(CPoint origin_, double h_, int nx_, int ny_)
    : origin(origin_), h(h_), nx(nx_), ny(ny_) {
    if (!is_finite(origin) || !(h > 0.0) || nx < 1 || ny < 1) {
        throw std::domain_error("Grid: requires finite origin, h > 0, nx,ny >= 1");
    }
}

std::vector<CPoint> Grid::nodes() const {
    std::vector<CPoint> out;
    out.reserve(count());
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            out.push_back(node(i, j));
        }
    }
    return out;
}

double discrete_lp_norm(std::span<const double> values,
                        std::span<const double> weights, double p) {
    if (values.size() != weights.size()) {
        throw std::domain_error("discrete_lp_norm: length mismatch");
    }
    if (!(p >= 1.0)) {
        throw std::domain_error("discrete_lp_norm: p must satisfy p >= 1");
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : values) m = std::max(m, std::abs(x));
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] < 0.0) {
            throw std::domain_error("discrete_lp_norm: negative weight");
        }
        acc += weights[i] * std::pow(std::abs(values[i]), p);
    }
    return std::pow(acc, 1.0 / p);
}

}  // namespace slitflow
