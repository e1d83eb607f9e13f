#include <catch2/catch_amalgamated.hpp>

#include "bergkern/forms.hpp"
#include "oracles.hpp"

using namespace bergkern;

TEST_CASE("eisenstein series coefficients") {
    auto e4 = forms::eisenstein_series(4, 64);
    auto e6 = forms::eisenstein_series(6, 64);
    CHECK(e4.coeffs[0] == 1);
    CHECK(e4.coeffs[1] == 240 * oracles::divisor_sum_direct(3, 1));
    CHECK(e4.coeffs[1] == 240);
    CHECK(e6.coeffs[2] == -504 * oracles::divisor_sum_direct(5, 2));
    CHECK(e6.coeffs[2] == -16632);
    for (unsigned long n = 1; n < 40; ++n) {
        CHECK(e4.coeffs[n] == 240 * oracles::divisor_sum_direct(3, n));
        CHECK(e6.coeffs[n] == -504 * oracles::divisor_sum_direct(5, n));
    }
    CHECK_THROWS_AS(forms::eisenstein_series(8, 16), std::domain_error);
    CHECK_THROWS_AS(forms::eisenstein_series(4, 1), std::invalid_argument);
}

TEST_CASE("ring consistency: E4^3 - E6^2 = 1728 Delta") {
    for (std::size_t trunc : {2, 8, 32}) {
        auto e4 = forms::eisenstein_series(4, trunc);
        auto e6 = forms::eisenstein_series(6, trunc);
        auto num = series::sub(series::pow(e4, 3, trunc), series::pow(e6, 2, trunc));
        CHECK(num.coeffs[0] == 0);
        if (trunc >= 2) CHECK(num.coeffs[1] == 1728);
    }
}

TEST_CASE("delta series") {
    auto d = forms::delta_series(220);
    CHECK(d.lead.num == 24);
    CHECK(d.coeffs[0] == 1);    // tau(1)
    CHECK(d.coeffs[1] == -24);  // tau(2), also via the eta^24 convolution below
    auto eta24 = forms::eta_power_series(24, 220);
    CHECK(series::equal_through(d, eta24, 200));
    CHECK(eta24.lead.num == 24);
}

TEST_CASE("euler product matches the pentagonal sieve") {
    auto phi = forms::euler_phi_series(101);
    auto direct = oracles::euler_product_direct(101, 100);
    for (std::size_t i = 0; i <= 100; ++i) CHECK(phi.coeffs[i] == direct[i]);
    // eta itself: nonzero offsets are pentagonal, coefficients +-1
    auto eta = forms::eta_power_series(1, 101);
    CHECK(eta.lead.num == 1);
    for (std::size_t i = 0; i <= 100; ++i) {
        const auto& c = eta.coeffs[i];
        bool pent = false;
        for (long j = -20; j <= 20; ++j)
            if ((long)i == j * (3 * j - 1) / 2) pent = true;
        if (pent) {
            CHECK((c == 1 || c == -1));
        } else {
            CHECK(c == 0);
        }
    }
}

TEST_CASE("eta powers") {
    for (unsigned long m : {1ul, 5ul, 24ul, 25ul}) {
        auto em = forms::eta_power_series(m, 40);
        CHECK(em.lead.num == (long)m);
        CHECK(em.weight.twice() == (long)m);
        CHECK(em.multiplier_unimodular);
        CHECK(em.coeffs[0] == 1);
    }
    // eta^2 * eta^3 = eta^5
    auto e2 = forms::eta_power_series(2, 40);
    auto e3 = forms::eta_power_series(3, 40);
    auto e5 = forms::eta_power_series(5, 40);
    CHECK(series::equal_through(series::mul(e2, e3), e5, 40));
}

TEST_CASE("j-series") {
    auto j = forms::j_series(40);
    CHECK(j.lead.num == -24);
    CHECK(j.coeffs[0] == 1);
    CHECK(j.coeffs[1] == 744);
    CHECK(j.coeffs[2] == 196884);
    // higher-truncation division oracle: coefficients are truncation-stable
    auto j2 = forms::j_series(80);
    CHECK(series::equal_through(j, j2, 40));
    // j * Delta = E4^3 exactly
    auto prod = series::mul(j, forms::delta_series(40));
    auto e43 = series::pow(forms::eisenstein_series(4, 40), 3, 40);
    CHECK(series::equal_through(prod, e43, 40));
}

TEST_CASE("series division round trip") {
    auto e4 = forms::eisenstein_series(4, 50);
    auto e6 = forms::eisenstein_series(6, 50);
    auto q = series::div(e6, e4);
    CHECK(series::equal_through(series::mul(q, e4), e6, 50));
    CHECK_THROWS_AS(series::div(e4, series::scale(e6, 2)), std::invalid_argument);
}

TEST_CASE("incommensurate grids are rejected") {
    auto eta = forms::eta_power_series(1, 10);   // lead 1/24
    auto e4 = forms::eisenstein_series(4, 10);   // lead 0
    CHECK_THROWS_AS(series::add(eta, e4), std::invalid_argument);
}
