// Generators of the level-one ring (E4, E6, Delta, j), Dedekind eta powers,
// the echelonized cusp basis for even integral weight, and the eta-quotient
// family realizing half-integral weight. Construction is exact; evaluation
// is floating point with a certified truncation tail.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bergkern/geometry.hpp"
#include "bergkern/qseries.hpp"

namespace bergkern {

struct TruncationError : std::runtime_error {
    std::size_t needed;
    TruncationError(std::size_t n, const std::string& what)
        : std::runtime_error(what), needed(n) {}
};

namespace forms {

// sigma_{e}(n) for n = 1..N, by sieving over divisors.
inline std::vector<mpz_class> divisor_sums(unsigned e, std::size_t N) {
    std::vector<mpz_class> s(N + 1, 0);
    for (std::size_t d = 1; d <= N; ++d) {
        mpz_class de;
        mpz_ui_pow_ui(de.get_mpz_t(), d, e);
        for (std::size_t n = d; n <= N; n += d) s[n] += de;
    }
    return s;
}

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for k in {4, 6}.
inline QExpansion eisenstein_series(int weight, std::size_t trunc) {
    if (trunc < 2) throw std::invalid_argument("eisenstein_series: trunc >= 2 required");
    long factor;
    if (weight == 4) factor = 240;
    else if (weight == 6) factor = -504;
    else throw std::domain_error("eisenstein_series: only weights 4 and 6 are generators here");
    QExpansion r;
    r.weight = HalfInt::integer(weight);
    r.lead.num = 0;
    r.coeffs.assign(trunc, 0);
    r.coeffs[0] = 1;
    auto s = divisor_sums((unsigned)(weight - 1), trunc - 1);
    for (std::size_t n = 1; n < trunc; ++n) r.coeffs[n] = factor * s[n];
    return r;
}

// Euler's product Phi(q) = prod (1 - q^n), pentagonal-number expansion.
inline QExpansion euler_phi_series(std::size_t trunc) {
    QExpansion r;
    r.weight = HalfInt::integer(0);
    r.lead.num = 0;
    r.coeffs.assign(trunc, 0);
    for (long j = 0;; ++j) {
        long g1 = j * (3 * j - 1) / 2;
        long g2 = j * (3 * j + 1) / 2;
        if (g1 >= (long)trunc && g2 >= (long)trunc) break;
        mpz_class sign = (j % 2 == 0) ? 1 : -1;
        if (g1 < (long)trunc) r.coeffs[(std::size_t)g1] += sign;
        if (j > 0 && g2 < (long)trunc) r.coeffs[(std::size_t)g2] += sign;
    }
    return r;
}

// eta^m = q^{m/24} Phi(q)^m; weight m/2, unitary multiplier.
inline QExpansion eta_power_series(unsigned long m, std::size_t trunc) {
    if (m < 1) throw std::invalid_argument("eta_power_series: m >= 1 required");
    QExpansion r = series::pow(euler_phi_series(trunc), m, trunc);
    r.weight = HalfInt::from_twice((long)m);
    r.lead.num = (long)m;
    r.multiplier_unimodular = true;
    return r;
}

// Delta = (E4^3 - E6^2)/1728, stored from its lead q^1.
inline QExpansion delta_series(std::size_t trunc) {
    if (trunc < 1) throw std::invalid_argument("delta_series: trunc >= 1 required");
    std::size_t w = trunc + 1;
    QExpansion e4 = eisenstein_series(4, w), e6 = eisenstein_series(6, w);
    QExpansion num = series::sub(series::pow(e4, 3, w), series::pow(e6, 2, w));
    QExpansion r;
    r.weight = HalfInt::integer(12);
    r.lead.num = 24;  // q^1
    r.coeffs.assign(trunc, 0);
    for (std::size_t n = 0; n < trunc; ++n) {
        mpz_class c = num.coeffs[n + 1] / 1728;
        if (c * 1728 != num.coeffs[n + 1])
            throw std::logic_error("delta_series: 1728 division not exact");
        r.coeffs[n] = c;
    }
    return r;
}

// j = E4^3 / Delta, a Laurent series from q^{-1}; trunc counts stored terms.
inline QExpansion j_series(std::size_t trunc) {
    if (trunc < 2) throw std::invalid_argument("j_series: trunc >= 2 required");
    QExpansion e4 = eisenstein_series(4, trunc);
    QExpansion r = series::div(series::pow(e4, 3, trunc), delta_series(trunc));
    r.weight = HalfInt::integer(0);
    return r;  // lead = -24/24
}

// dim S_k(PSL2(Z)) for even integral k; eta-family count for 2k odd;
// 0 for odd integral k (level one).
inline std::size_t cusp_dimension(HalfInt k) {
    if (k.twice() < 0) throw std::domain_error("cusp_dimension: negative weight");
    if (k.twice() % 2 == 1) {
        // members eta^{2k} j^m with cusp order 2k/24 - m > 0
        return (std::size_t)(k.twice() / 24) + 1;
    }
    long kk = k.twice() / 2;
    if (kk % 2 == 1) return 0;
    if (kk < 12) return 0;
    long d = kk / 12;
    if (kk % 12 == 2) d -= 1;
    return (std::size_t)std::max(0L, d);
}

enum class BasisKind { integral_echelon, half_integral_eta_family };

struct FormBasis {
    HalfInt weight;
    std::vector<QExpansion> members;
    BasisKind kind = BasisKind::integral_echelon;

    std::size_t dimension() const { return members.size(); }
};

// E4^a E6^b of weight n (n even, n != 2).
inline QExpansion eisenstein_monomial(long n, std::size_t trunc) {
    if (n == 0) return series::one(trunc);
    if (n < 0 || n % 2 != 0 || n == 2)
        throw std::domain_error("no Eisenstein monomial of weight " + std::to_string(n));
    long a, b;
    if (n % 4 == 0) { a = n / 4; b = 0; }
    else { a = (n - 6) / 4; b = 1; }
    QExpansion r = series::pow(eisenstein_series(4, trunc), (unsigned long)a, trunc);
    if (b) r = series::mul(r, eisenstein_series(6, trunc));
    r.weight = HalfInt::integer(n);
    return r;
}

// Echelon (Miller) basis of S_k(PSL2(Z)): d forms f_j = q^j + O(q^{d+1}),
// coefficients stored through q^trunc. Gauss elimination is exact and the
// pivots stay 1, so everything remains integral.
inline FormBasis miller_cusp_basis(long k, std::size_t trunc) {
    if (k < 0 || k % 2 != 0) throw std::domain_error("miller_cusp_basis: even k >= 0 required");
    FormBasis basis;
    basis.weight = HalfInt::integer(k);
    basis.kind = BasisKind::integral_echelon;
    std::size_t d = cusp_dimension(HalfInt::integer(k));
    if (d == 0) return basis;
    if (trunc < d + 2) trunc = d + 2;

    std::size_t window = trunc + 1;  // store exponents up to q^trunc
    QExpansion delta = delta_series(window);
    std::vector<QExpansion> rows;
    rows.reserve(d);
    for (std::size_t j = 1; j <= d; ++j) {
        QExpansion m = series::mul(series::pow(delta, (unsigned long)j, window),
                                   eisenstein_monomial(k - 12 * (long)j, window));
        m.weight = HalfInt::integer(k);
        rows.push_back(std::move(m));  // lead q^j, leading coefficient 1
    }
    // eliminate so row j has coefficient delta_{ij} at q^i for i <= d
    for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t r = 0; r < d; ++r) {
            if (r == p) continue;
            const mpz_class& c = rows[r].at_exp24(24 * (long)(p + 1));
            if (c != 0) rows[r] = series::sub(rows[r], series::scale(rows[p], c));
        }
    }
    basis.members = std::move(rows);
    return basis;
}

// Family eta^{2k} j^m, m = 0..M, M maximal with 2k/24 - m > 0. Exact
// integer q-expansions with fractional lead exponents; the eta multiplier
// is a root of unity, so y^k |f|^2 is Gamma-invariant.
inline FormBasis half_integral_cusp_family(HalfInt k, std::size_t trunc) {
    if (k.twice() % 2 == 0)
        throw std::domain_error("half_integral_cusp_family: 2k must be odd (use the echelon basis)");
    if (k.twice() < 1) throw std::domain_error("half_integral_cusp_family: k >= 1/2 required");
    FormBasis basis;
    basis.weight = k;
    basis.kind = BasisKind::half_integral_eta_family;
    std::size_t M = cusp_dimension(k) - 1;

    std::size_t window = trunc + 2;
    QExpansion eta2k = eta_power_series((unsigned long)k.twice(), window);
    QExpansion j = j_series(window);
    QExpansion jm = series::one(window);
    for (std::size_t m = 0; m <= M; ++m) {
        QExpansion f = series::mul(eta2k, jm);
        f.weight = k;
        f.multiplier_unimodular = true;
        basis.members.push_back(std::move(f));
        if (m < M) jm = series::mul(jm, j);
    }
    return basis;
}

// Either construction, by parity of 2k. Odd integral weight gives the
// empty basis (level one).
inline FormBasis cusp_basis(HalfInt k, std::size_t trunc) {
    if (k.twice() % 2 == 1) return half_integral_cusp_family(k, trunc);
    long kk = k.twice() / 2;
    if (kk % 2 == 1) {
        FormBasis b;
        b.weight = k;
        return b;
    }
    return miller_cusp_basis(kk, trunc);
}

// ---------------------------------------------------------------------------
// Evaluation

// Coefficients converted once to Real, plus a growth envelope
// |a_n| <= env_C * max(n,1)^{env_s} used for certified tails.
template <typename Real>
struct PreparedForm {
    HalfInt weight;
    Exp24 lead;
    std::vector<Real> coeffs;
    Real env_C{}, env_s{};
};

template <typename Real>
Real mpz_to_real(const mpz_class& v) {
    std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    if (bits <= 1020) {
        double hi = mpz_get_d(v.get_mpz_t());
        mpz_class r = v - mpz_class(hi);
        return (Real)hi + (Real)mpz_get_d(r.get_mpz_t());
    }
    long e = 0;
    double d = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::ldexp((Real)d, (int)e);
}

template <typename Real>
PreparedForm<Real> prepare_form(const QExpansion& f) {
    if (f.empty()) throw std::invalid_argument("prepare_form: empty expansion");
    PreparedForm<Real> p;
    p.weight = f.weight;
    p.lead = f.lead;
    p.coeffs.resize(f.trunc());
    for (std::size_t i = 0; i < f.trunc(); ++i) p.coeffs[i] = mpz_to_real<Real>(f.coeffs[i]);
    // fit |a_n| <= C n^s on the stored range, s the weight, C inflated 2x
    p.env_s = std::max<Real>(f.weight.template value<Real>(), Real(0));
    Real C = Real(0);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        Real n = std::max<Real>(Real(i), Real(1));
        C = std::max(C, std::abs(p.coeffs[i]) / std::pow(n, p.env_s));
    }
    p.env_C = Real(2) * std::max(C, Real(1e-300));
    return p;
}

// Bound on sum_{n >= N} C n^s x^n, x = e^{-2 pi y} < 1 (integral test:
// n^s <= N^s e^{s(n-N)/N}).
template <typename Real>
Real coeff_tail_bound(Real C, Real s, Real x, std::size_t N) {
    Real xe = x * std::exp(s / Real(N));
    if (!(xe < Real(1))) return std::numeric_limits<Real>::infinity();
    return C * std::pow(Real(N), s) * std::pow(x, Real(N)) / (Real(1) - xe);
}

template <typename Real>
struct FormValue {
    std::complex<Real> value;
    Real tail_bound;
};

// f(z) = sum a_n q^{lead+n}, q = e^{2 pi i z}; fractional powers use the
// principal branch of e^{2 pi i z lead}.
template <typename Real>
FormValue<Real> evaluate_form(const PreparedForm<Real>& f, const HPoint<Real>& z,
                              Real tol = Real(0)) {
    const Real two_pi = Real(6.28318530717958647692528676655900577L);
    std::complex<Real> iz(-two_pi * z.y, two_pi * z.x);  // 2 pi i z
    std::complex<Real> q = std::exp(iz);
    std::complex<Real> lead_pow = std::exp(iz * (Real(f.lead.num) / Real(24)));
    std::complex<Real> acc(0);
    for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = acc * q + f.coeffs[i];
    Real x = std::abs(q);
    Real tail = coeff_tail_bound(f.env_C, f.env_s, x, f.coeffs.size()) * std::abs(lead_pow);
    if (tol > Real(0) && !(tail <= tol)) {
        std::size_t N = f.coeffs.size();
        while (N < (std::size_t)1 << 24 &&
               !(coeff_tail_bound(f.env_C, f.env_s, x, N) * std::abs(lead_pow) <= tol))
            N *= 2;
        throw TruncationError(N, "evaluate_form: tail bound " + std::to_string((double)tail) +
                                     " exceeds tolerance; increase truncation");
    }
    return {lead_pow * acc, tail};
}

template <typename Real>
FormValue<Real> evaluate_form(const QExpansion& f, const HPoint<Real>& z, Real tol = Real(0)) {
    return evaluate_form(prepare_form<Real>(f), z, tol);
}

}  // namespace forms
}  // namespace bergkern
