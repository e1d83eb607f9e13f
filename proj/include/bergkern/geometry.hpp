// Upper half-plane geometry: Moebius action of SL(2,Z), reduction to the
// standard fundamental domain, hyperbolic measure density.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace bergkern {

template <typename Real>
struct HPoint {
    Real x{};
    Real y{};  // must stay > 0

    bool valid() const { return std::isfinite(x) && std::isfinite(y) && y > Real(0); }
};

// Integer matrix (a b; c d), det = 1, acting as z -> (az+b)/(cz+d).
struct MoebiusMap {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    static constexpr MoebiusMap identity() { return {1, 0, 0, 1}; }
    static constexpr MoebiusMap inversion() { return {0, -1, 1, 0}; }       // S
    static constexpr MoebiusMap translation(std::int64_t n) { return {1, n, 0, 1}; }  // T^n

    constexpr std::int64_t det() const { return a * d - b * c; }

    friend constexpr MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    constexpr MoebiusMap inverse() const { return {d, -b, -c, a}; }
    friend constexpr bool operator==(const MoebiusMap& m, const MoebiusMap& n) {
        return (m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d) ||
               (m.a == -n.a && m.b == -n.b && m.c == -n.c && m.d == -n.d);  // PSL(2)
    }
};

template <typename Real>
HPoint<Real> moebius_apply(const MoebiusMap& m, const HPoint<Real>& z) {
    // (az+b)/(cz+d), Im -> y/|cz+d|^2
    Real re_den = Real(m.c) * z.x + Real(m.d);
    Real im_den = Real(m.c) * z.y;
    Real n2 = re_den * re_den + im_den * im_den;
    Real re_num = Real(m.a) * z.x + Real(m.b);
    Real im_num = Real(m.a) * z.y;
    return {(re_num * re_den + im_num * im_den) / n2, z.y / n2};
}

// 1/y^2, the density of the hyperbolic measure against dx dy.
template <typename Real>
Real hyperbolic_density(const HPoint<Real>& z) {
    return Real(1) / (z.y * z.y);
}

// |x| <= 1/2 and x^2 + y^2 >= 1, up to tol on the boundary.
template <typename Real>
bool in_fundamental_domain(const HPoint<Real>& z, Real tol = Real(1e-12)) {
    return std::abs(z.x) <= Real(0.5) + tol && z.x * z.x + z.y * z.y >= Real(1) - tol;
}

// Standard reduction: translate into |x| <= 1/2, invert while |z| < 1.
// Returns (z', g) with g z = z'.
template <typename Real>
std::pair<HPoint<Real>, MoebiusMap> reduce_to_fundamental_domain(const HPoint<Real>& z0) {
    if (!z0.valid()) throw std::invalid_argument("point not in upper half-plane");
    HPoint<Real> z = z0;
    MoebiusMap g = MoebiusMap::identity();
    const int cap = 10000;
    for (int it = 0; it < cap; ++it) {
        Real n = std::floor(z.x + Real(0.5));
        if (n != Real(0)) {
            auto t = MoebiusMap::translation(-(std::int64_t)n);
            z = moebius_apply(t, z);
            g = t * g;
        }
        Real r2 = z.x * z.x + z.y * z.y;
        if (r2 >= Real(1)) return {z, g};
        auto s = MoebiusMap::inversion();
        z = moebius_apply(s, z);
        g = s * g;
    }
    throw std::runtime_error("fundamental-domain reduction did not terminate");
}

}  // namespace bergkern
