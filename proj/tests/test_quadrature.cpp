#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bergkern/quadrature.hpp"

using namespace bergkern;
using Real = long double;

namespace {
constexpr Real kPi = 3.14159265358979323846264338327950288L;

Real truncated_area(const QuadratureGrid<Real>& g) {
    auto r = integrate_over_F([](const HPoint<Real>&) { return Real(1); }, g,
                              TailMajorant<Real>{1, 0, -2});
    return r.value.real();
}
}  // namespace

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
    std::vector<Real> x, w;
    for (int n : {1, 2, 5, 10}) {
        gauss_legendre(n, x, w);
        Real wsum = 0;
        for (Real wi : w) wsum += wi;
        CHECK(std::abs(wsum - 2) < 1e-17L);
        // degree 2n-1 monomial
        Real s = 0;
        int d = 2 * n - 1;
        for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], Real(d - 1));
        Real exact = (d - 1) % 2 == 0 ? Real(2) / Real(d) : Real(0);
        CHECK(std::abs(s - exact) < 1e-16L);
    }
}

TEST_CASE("area of the truncated domain plus analytic tail is pi/3") {
    auto grid = build_quadrature<Real>(10, 32, 32, 8);
    Real area = truncated_area(grid);
    // exact truncated area: pi/3 - \int_{y>10} dx dy / y^2 = pi/3 - 1/10
    CHECK(std::abs(area - (kPi / 3 - Real(0.1))) < 1e-8L);
    auto r = integrate_over_F([](const HPoint<Real>&) { return Real(1); }, grid,
                              TailMajorant<Real>{1, 0, -2});
    CHECK(std::abs(r.tail_bound - Real(0.1)) < 1e-15L);
    CHECK(std::abs(area + r.tail_bound - kPi / 3) < 1e-8L);
}

TEST_CASE("panel doubling sharpens the area by at least 10x") {
    auto coarse = build_quadrature<Real>(8, 4, 4, 2);
    auto fine = build_quadrature<Real>(8, 8, 8, 2);
    Real exact = kPi / 3 - Real(1) / 8;
    Real e1 = std::abs(truncated_area(coarse) - exact);
    Real e2 = std::abs(truncated_area(fine) - exact);
    CHECK(e1 > 0);
    CHECK(e1 / e2 >= 10);
}

TEST_CASE("minimal grid keeps weights positive and nodes inside the domain") {
    auto grid = build_quadrature<Real>(1.2L, 1, 1, 1);
    REQUIRE(!grid.nodes.empty());
    for (const auto& n : grid.nodes) {
        CHECK(n.w > 0);
        CHECK(in_fundamental_domain(n.z));
        CHECK(n.z.y <= grid.y_cap);
    }
}

TEST_CASE("grading covers tall domains") {
    auto grid = build_quadrature<Real>(230, 8, 48, 6);
    Real area = truncated_area(grid);
    CHECK(std::abs(area - (kPi / 3 - Real(1) / 230)) < 1e-8L);
}

TEST_CASE("zero integrand gives (0, 0)") {
    auto grid = build_quadrature<Real>(4, 4, 4, 4);
    auto r = integrate_over_F([](const HPoint<Real>&) { return Real(0); }, grid,
                              TailMajorant<Real>{0, 0, 0});
    CHECK(r.value == std::complex<Real>(0));
    CHECK(r.tail_bound == 0);
}

TEST_CASE("tail bound formulas") {
    // a=0 needs p < -1
    CHECK_THROWS_AS(tail_integral_bound(TailMajorant<Real>{1, 0, -1}, Real(10)),
                    std::domain_error);
    CHECK_THROWS_AS(tail_integral_bound(TailMajorant<Real>{1, 0, 0}, Real(10)), std::domain_error);
    // exponential tails: bound must dominate the exact integral
    // \int_Y^inf e^{-ay} dy = e^{-aY}/a
    Real exact = std::exp(-Real(2) * 10) / 2;
    Real bound = tail_integral_bound(TailMajorant<Real>{1, 2, 0}, Real(10));
    CHECK(bound >= exact);
    CHECK(bound <= exact * Real(1.0000001L));
    // growing polynomial factor still dominated for a > p/Y
    Real b2 = tail_integral_bound(TailMajorant<Real>{1, 2, 3}, Real(10));
    CHECK(b2 >= std::pow(Real(10), Real(3)) * std::exp(-20.0L) / 2);
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(build_quadrature<Real>(1.0L, 4, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_quadrature<Real>(4, 0, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_quadrature<Real>(4, 4, 4, 0), std::invalid_argument);
}
