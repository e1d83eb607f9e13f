// Paneled Gauss-Legendre quadrature over the truncated fundamental domain
// {|x| <= 1/2, sqrt(1-x^2) <= y <= y_cap}. Weights absorb the hyperbolic
// density 1/y^2, so integrands are plain functions of z.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bergkern/geometry.hpp"

namespace bergkern {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1].
template <typename Real>
void gauss_legendre(int n, std::vector<Real>& x, std::vector<Real>& w) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    x.assign(n, Real(0));
    w.assign(n, Real(0));
    const Real pi = Real(3.14159265358979323846264338327950288L);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-like initial guess.
        Real t = std::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real pp = 0;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1, p1 = 0;
            for (int j = 0; j < n; ++j) {
                Real p2 = p1;
                p1 = p0;
                p0 = ((2 * Real(j) + 1) * t * p1 - Real(j) * p2) / Real(j + 1);
            }
            pp = Real(n) * (t * p0 - p1) / (t * t - 1);
            Real dt = p0 / pp;
            t -= dt;
            if (std::abs(dt) < Real(1e-19) * (Real(1) + std::abs(t))) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = Real(2) / ((1 - t * t) * pp * pp);
    }
}

template <typename Real>
struct QuadNode {
    HPoint<Real> z;
    Real w;  // includes the 1/y^2 density
};

template <typename Real>
struct QuadratureGrid {
    std::vector<QuadNode<Real>> nodes;
    Real y_cap{};
    int panels_x = 0, panels_y = 0, nodes_per_panel = 0;
    std::string tail_rule = "closed-form majorant integral over y > y_cap, strip width 1";

    Real y_min() const {
        Real m = y_cap;
        for (const auto& n : nodes) m = std::min(m, n.z.y);
        return m;
    }
};

namespace detail {

// Panel breakpoints on [lo, hi]: uniform if the panel height stays below
// h0, otherwise geometrically graded so the first panel has height ~h0.
template <typename Real>
std::vector<Real> graded_breaks(Real lo, Real hi, int n, Real h0 = Real(0.3)) {
    std::vector<Real> b(n + 1);
    Real range = hi - lo;
    if (range / Real(n) <= h0) {
        for (int i = 0; i <= n; ++i) b[i] = lo + range * Real(i) / Real(n);
        return b;
    }
    // solve h0 (r^n - 1)/(r - 1) = range for r > 1 by bisection
    Real rlo = Real(1) + Real(1e-9), rhi = Real(2);
    auto total = [&](Real r) { return h0 * (std::pow(r, Real(n)) - 1) / (r - 1); };
    while (total(rhi) < range) rhi *= 2;
    for (int it = 0; it < 200; ++it) {
        Real rm = (rlo + rhi) / 2;
        (total(rm) < range ? rlo : rhi) = rm;
    }
    Real r = (rlo + rhi) / 2;
    b[0] = lo;
    Real h = h0;
    for (int i = 1; i <= n; ++i) {
        b[i] = b[i - 1] + h;
        h *= r;
    }
    b[n] = hi;  // absorb the bisection residue into the last panel
    return b;
}

}  // namespace detail

template <typename Real>
QuadratureGrid<Real> build_quadrature(Real y_cap, int panels_x, int panels_y,
                                      int nodes_per_panel) {
    if (!(y_cap >= Real(1.2))) throw std::invalid_argument("build_quadrature: y_cap >= 1.2 required");
    if (panels_x < 1 || panels_y < 1 || nodes_per_panel < 1)
        throw std::invalid_argument("build_quadrature: panel/node counts must be >= 1");

    std::vector<Real> gx, gw;
    gauss_legendre(nodes_per_panel, gx, gw);

    QuadratureGrid<Real> grid;
    grid.y_cap = y_cap;
    grid.panels_x = panels_x;
    grid.panels_y = panels_y;
    grid.nodes_per_panel = nodes_per_panel;
    grid.nodes.reserve((std::size_t)panels_x * panels_y * nodes_per_panel * nodes_per_panel);

    for (int px = 0; px < panels_x; ++px) {
        Real xa = Real(-0.5) + Real(px) / Real(panels_x);
        Real xb = Real(-0.5) + Real(px + 1) / Real(panels_x);
        for (int ix = 0; ix < nodes_per_panel; ++ix) {
            Real x = (xa + xb) / 2 + (xb - xa) / 2 * gx[ix];
            Real wx = (xb - xa) / 2 * gw[ix];
            Real y_low = std::sqrt(Real(1) - x * x);
            auto breaks = detail::graded_breaks(y_low, y_cap, panels_y);
            for (int py = 0; py < panels_y; ++py) {
                Real ya = breaks[py], yb = breaks[py + 1];
                for (int iy = 0; iy < nodes_per_panel; ++iy) {
                    Real y = (ya + yb) / 2 + (yb - ya) / 2 * gx[iy];
                    Real wy = (yb - ya) / 2 * gw[iy];
                    grid.nodes.push_back({{x, y}, wx * wy / (y * y)});
                }
            }
        }
    }
    return grid;
}

// Decay certificate for the integrand against dx dy, density included:
// |f(z)| / y^2 <= C e^{-a y} y^p for y > y_cap. The area functional f == 1
// is (C, a, p) = (1, 0, -2).
template <typename Real>
struct TailMajorant {
    Real C{}, a{}, p{};
};

// Closed-form bound on \int_{y>Y} \int_{|x|<1/2} C e^{-a y} y^p dx dy.
template <typename Real>
Real tail_integral_bound(const TailMajorant<Real>& t, Real Y) {
    if (t.C == Real(0)) return Real(0);
    if (t.C < Real(0)) throw std::domain_error("tail majorant: C must be >= 0");
    if (t.a > Real(0)) {
        if (t.p <= Real(0)) {
            return t.C * std::pow(Y, t.p) * std::exp(-t.a * Y) / t.a;
        }
        // y^p <= Y^p e^{p (y-Y)/Y} for y >= Y
        Real a_eff = t.a - t.p / Y;
        if (a_eff <= Real(0))
            throw std::domain_error(
                "tail majorant: y^p growth not dominated at this y_cap; raise y_cap");
        return t.C * std::pow(Y, t.p) * std::exp(-t.a * Y) / a_eff;
    }
    if (t.a == Real(0) && t.p < Real(-1)) {
        return t.C * std::pow(Y, t.p + 1) / (-t.p - 1);
    }
    throw std::domain_error("tail majorant not integrable: need a > 0 or p < -1");
}

template <typename Real>
struct IntegralResult {
    std::complex<Real> value;
    Real tail_bound;
};

// Quadrature of f over the truncated domain plus the tail certificate.
// Fixed node order with compensated summation, so results are reproducible.
template <typename Real, typename F>
IntegralResult<Real> integrate_over_F(F&& f, const QuadratureGrid<Real>& grid,
                                      const TailMajorant<Real>& tail) {
    Real tb = tail_integral_bound(tail, grid.y_cap);
    std::complex<Real> sum{}, comp{};
    for (const auto& n : grid.nodes) {
        std::complex<Real> term = std::complex<Real>(n.w) * std::complex<Real>(f(n.z));
        auto t = sum + term;
        if (std::abs(sum.real()) >= std::abs(term.real()))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return {sum + comp, tb};
}

}  // namespace bergkern
