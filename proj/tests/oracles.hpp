// Independent oracles used by the test suite only. These deliberately avoid
// the implementation paths they check: brute-force group words instead of
// the reduction loop, direct products instead of pentagonal sieves, direct
// divisor loops instead of sieved sums, dense scans instead of refined ones.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "bergkern/geometry.hpp"
#include "bergkern/forms.hpp"

namespace oracles {

using bergkern::HPoint;
using bergkern::MoebiusMap;

// Ball of PSL(2,Z) elements reachable by words in {S, T, T^-1} of bounded
// length, deduplicated up to sign.
inline std::vector<MoebiusMap> group_ball(int max_len) {
    using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>;
    auto key = [](const MoebiusMap& m) {
        std::int64_t a = m.a, b = m.b, c = m.c, d = m.d;
        if (a < 0 || (a == 0 && c < 0)) {
            a = -a; b = -b; c = -c; d = -d;
        }
        return Key{a, b, c, d};
    };
    std::set<Key> seen;
    std::vector<MoebiusMap> ball{MoebiusMap::identity()};
    seen.insert(key(ball[0]));
    std::vector<MoebiusMap> frontier = ball;
    const MoebiusMap gens[3] = {MoebiusMap::inversion(), MoebiusMap::translation(1),
                                MoebiusMap::translation(-1)};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<MoebiusMap> next;
        for (const auto& m : frontier) {
            for (const auto& g : gens) {
                MoebiusMap p = g * m;
                if (seen.insert(key(p)).second) {
                    next.push_back(p);
                    ball.push_back(p);
                }
            }
        }
        frontier.swap(next);
        if (ball.size() > 2000000) break;
    }
    return ball;
}

// Reduction oracle: the word that maximizes the image height.
template <typename Real>
HPoint<Real> best_reduction_by_words(const HPoint<Real>& z, int max_len) {
    auto ball = group_ball(max_len);
    HPoint<Real> best = z;
    for (const auto& m : ball) {
        auto w = bergkern::moebius_apply(m, z);
        if (w.y > best.y) best = w;
    }
    // final horizontal translation into |x| <= 1/2
    Real n = std::floor(best.x + Real(0.5));
    best.x -= n;
    return best;
}

inline mpz_class divisor_sum_direct(unsigned e, unsigned long n) {
    mpz_class s = 0;
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        mpz_class de;
        mpz_ui_pow_ui(de.get_mpz_t(), d, e);
        s += de;
    }
    return s;
}

// prod_{n=1}^{nmax} (1 - q^n) expanded term by term.
inline std::vector<mpz_class> euler_product_direct(std::size_t trunc, std::size_t nmax) {
    std::vector<mpz_class> c(trunc, 0);
    c[0] = 1;
    for (std::size_t n = 1; n <= nmax && n < trunc; ++n) {
        for (std::size_t i = trunc; i-- > n;) c[i] -= c[i - n];
    }
    return c;
}

// Rank over Q of the span of the weight-k cuspidal monomials
// Delta^c E4^a E6^b (c >= 1), an independent dimension oracle.
inline std::size_t cusp_monomial_rank(long k, std::size_t trunc) {
    using bergkern::QExpansion;
    namespace series = bergkern::series;
    namespace forms = bergkern::forms;
    std::vector<QExpansion> monomials;
    QExpansion delta = forms::delta_series(trunc);
    QExpansion e4 = forms::eisenstein_series(4, trunc);
    QExpansion e6 = forms::eisenstein_series(6, trunc);
    for (long c = 1; 12 * c <= k; ++c) {
        for (long a = 0; 12 * c + 4 * a <= k; ++a) {
            long rem = k - 12 * c - 4 * a;
            if (rem % 6 != 0) continue;
            long b = rem / 6;
            QExpansion m = series::pow(delta, (unsigned long)c, trunc);
            m = series::mul(m, series::pow(e4, (unsigned long)a, trunc));
            m = series::mul(m, series::pow(e6, (unsigned long)b, trunc));
            monomials.push_back(std::move(m));
        }
    }
    if (monomials.empty()) return 0;
    // exact Gaussian elimination on rational rows, columns aligned by the
    // absolute exponent q^1 .. q^cols
    std::size_t cols = trunc;
    for (const auto& m : monomials)
        cols = std::min(cols, (std::size_t)(m.window_end24() / 24 - 1));
    std::vector<std::vector<mpq_class>> rows;
    for (const auto& m : monomials) {
        std::vector<mpq_class> r(cols);
        for (std::size_t i = 0; i < cols; ++i) r[i] = mpq_class(m.at_exp24(24 * (long)(i + 1)));
        rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            mpq_class f = rows[r][col] / rows[rank][col];
            for (std::size_t cidx = col; cidx < cols; ++cidx)
                rows[r][cidx] -= f * rows[rank][cidx];
        }
        ++rank;
    }
    return rank;
}

}  // namespace oracles
