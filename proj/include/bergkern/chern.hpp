// First Chern forms of Petersson-type metrics e^{-phi}, phi = -w log y:
// finite-difference and closed-form densities against the hyperbolic
// measure, and the predicted Bergman growth ratios they induce.
#pragma once

#include <cmath>
#include <stdexcept>

#include "bergkern/geometry.hpp"
#include "bergkern/halfint.hpp"

namespace bergkern {
namespace chern {

template <typename Real>
struct MetricWeight {
    HalfInt w;
    Real phi(const HPoint<Real>& z) const { return -w.template value<Real>() * std::log(z.y); }
};

template <typename Real>
struct ChernDensity {
    HPoint<Real> z;
    Real value_mu_hyp;  // c with c_1 = c * mu_hyp at z
};

// c_1 = (i/2pi) ddbar phi; with ddbar = (1/4) Laplacian and mu_hyp carrying
// i/2 dz dzbar / y^2 this is value = y^2 Lap(phi) / (4 pi). 5-point stencil.
template <typename Real>
ChernDensity<Real> chern_density_numeric(const MetricWeight<Real>& m, const HPoint<Real>& z,
                                         Real h) {
    if (!(h > Real(0)) || !(h < z.y / 4))
        throw std::invalid_argument("chern_density_numeric: need 0 < h < y/4");
    const Real pi = Real(3.14159265358979323846264338327950288L);
    Real lap = (m.phi({z.x + h, z.y}) + m.phi({z.x - h, z.y}) + m.phi({z.x, z.y + h}) +
                m.phi({z.x, z.y - h}) - 4 * m.phi(z)) /
               (h * h);
    return {z, z.y * z.y * lap / (4 * pi)};
}

// Exact multiple of mu_hyp: ddbar(-log y) has dz dzbar coefficient 1/(4y^2),
// so the density is w/(4 pi).
template <typename Real = long double>
Real chern_density_closed(HalfInt w) {
    const Real pi = Real(3.14159265358979323846264338327950288L);
    return w.template value<Real>() / (4 * pi);
}

template <typename Real>
struct RefinedDensity {
    Real value;           // Richardson-extrapolated
    Real observed_order;  // from the h, h/2, h/4 differences
};

template <typename Real>
RefinedDensity<Real> chern_density_refined(const MetricWeight<Real>& m, const HPoint<Real>& z,
                                           Real h) {
    Real v1 = chern_density_numeric(m, z, h).value_mu_hyp;
    Real v2 = chern_density_numeric(m, z, h / 2).value_mu_hyp;
    Real v4 = chern_density_numeric(m, z, h / 4).value_mu_hyp;
    Real d1 = std::abs(v1 - v2), d2 = std::abs(v2 - v4);
    Real order = (d1 > Real(0) && d2 > Real(0)) ? std::log2(d1 / d2) : Real(2);
    return {v4 + (v4 - v2) / 3, order};
}

// Predicted limsup of B_k(z)/k: tensor-power growth per unit weight times
// the closed-form density. power_per_k = 2 for the square of the half-form
// bundle, 1/2 for the cotangent-power route.
template <typename Real = long double>
Real berman_predicted_ratio(HalfInt w, Real power_per_k) {
    if (w.twice() <= 0)
        throw std::domain_error("berman_predicted_ratio: bundle must be positive (w > 0)");
    return power_per_k * chern_density_closed<Real>(w);
}

}  // namespace chern
}  // namespace bergkern
