// Truncated q-expansions with exact integer coefficients on the exponent
// grid lead + Z, lead a multiple of 1/24. All generators used here (E4, E6,
// Delta, j, eta powers) have integer coefficients, so the ring arithmetic
// stays in mpz.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bergkern/halfint.hpp"

namespace bergkern {

struct QExpansion {
    HalfInt weight;
    Exp24 lead;                     // exponent of coeffs[0]; successive terms step by 1
    std::vector<mpz_class> coeffs;  // coefficient of q^(lead + i)
    bool multiplier_unimodular = true;

    std::size_t trunc() const { return coeffs.size(); }
    bool empty() const { return coeffs.empty(); }

    // exclusive upper end of the known exponent window, in 1/24 units
    long window_end24() const { return lead.num + 24 * (long)coeffs.size(); }

    // Coefficient of q^(e24/24). Exponents below the lead are known zeros;
    // exponents past the stored window are unknown and rejected.
    const mpz_class& at_exp24(long e24) const {
        static const mpz_class zero = 0;
        long off = e24 - lead.num;
        if (off % 24 != 0 || off < 0) return zero;
        long i = off / 24;
        if (i >= (long)coeffs.size())
            throw std::out_of_range("QExpansion: exponent past the stored window");
        return coeffs[(std::size_t)i];
    }
};

namespace series {

inline void require_commensurate(const QExpansion& a, const QExpansion& b) {
    if (((a.lead.num - b.lead.num) % 24) != 0)
        throw std::invalid_argument("q-series live on incommensurate exponent grids");
}

// Sum, sound through the smaller of the two known windows.
inline QExpansion add(const QExpansion& a, const QExpansion& b) {
    require_commensurate(a, b);
    QExpansion r;
    r.weight = a.weight;
    r.multiplier_unimodular = a.multiplier_unimodular && b.multiplier_unimodular;
    r.lead.num = std::min(a.lead.num, b.lead.num);
    long end = std::min(a.window_end24(), b.window_end24());
    long n = (end - r.lead.num) / 24;
    if (n <= 0) throw std::invalid_argument("series windows do not overlap");
    r.coeffs.assign((std::size_t)n, 0);
    for (long i = 0; i < n; ++i) {
        long e = r.lead.num + 24 * i;
        if (e >= a.lead.num && e < a.window_end24()) r.coeffs[(std::size_t)i] += a.coeffs[(std::size_t)((e - a.lead.num) / 24)];
        if (e >= b.lead.num && e < b.window_end24()) r.coeffs[(std::size_t)i] += b.coeffs[(std::size_t)((e - b.lead.num) / 24)];
    }
    return r;
}

inline QExpansion scale(const QExpansion& a, const mpz_class& c) {
    QExpansion r = a;
    for (auto& v : r.coeffs) v *= c;
    return r;
}

inline QExpansion sub(const QExpansion& a, const QExpansion& b) {
    return add(a, scale(b, -1));
}

// Product truncated to min(trunc_a, trunc_b) terms past the combined lead.
inline QExpansion mul(const QExpansion& a, const QExpansion& b) {
    QExpansion r;
    r.weight = HalfInt::from_twice(a.weight.twice() + b.weight.twice());
    r.multiplier_unimodular = a.multiplier_unimodular && b.multiplier_unimodular;
    r.lead = a.lead + b.lead;
    std::size_t n = std::min(a.trunc(), b.trunc());
    r.coeffs.assign(n, 0);
    for (std::size_t i = 0; i < a.trunc() && i < n; ++i) {
        if (a.coeffs[i] == 0) continue;
        std::size_t jmax = std::min(b.trunc(), n - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b.coeffs[j] == 0) continue;
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        }
    }
    return r;
}

inline QExpansion one(std::size_t trunc) {
    QExpansion r;
    r.weight = HalfInt::integer(0);
    r.lead.num = 0;
    r.coeffs.assign(trunc, 0);
    r.coeffs[0] = 1;
    return r;
}

inline QExpansion pow(const QExpansion& a, unsigned long e, std::size_t trunc) {
    QExpansion base = a;
    QExpansion r = one(std::min(trunc, a.trunc()));
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return r;
}

// Division by a series with unit leading coefficient; exact over Z.
inline QExpansion div(const QExpansion& a, const QExpansion& b) {
    if (b.empty() || (b.coeffs[0] != 1 && b.coeffs[0] != -1))
        throw std::invalid_argument("series division requires a unit leading coefficient");
    QExpansion r;
    r.weight = HalfInt::from_twice(a.weight.twice() - b.weight.twice());
    r.multiplier_unimodular = true;
    r.lead = a.lead - b.lead;
    std::size_t n = std::min(a.trunc(), b.trunc());
    r.coeffs.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class acc = a.coeffs[i];
        std::size_t jmax = std::min(i, b.trunc() - 1);
        for (std::size_t j = 1; j <= jmax; ++j) acc -= b.coeffs[j] * r.coeffs[i - j];
        r.coeffs[i] = (b.coeffs[0] == 1) ? acc : -acc;
    }
    return r;
}

inline bool equal_through(const QExpansion& a, const QExpansion& b, std::size_t nterms) {
    if (a.lead.num != b.lead.num) return false;
    if (a.trunc() < nterms || b.trunc() < nterms) return false;
    for (std::size_t i = 0; i < nterms; ++i)
        if (a.coeffs[i] != b.coeffs[i]) return false;
    return true;
}

}  // namespace series
}  // namespace bergkern
