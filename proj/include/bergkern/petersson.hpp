// Petersson inner products by fundamental-domain quadrature, Gram matrices
// with a shared evaluation cache, and Cholesky-based orthonormalization.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "bergkern/forms.hpp"
#include "bergkern/linalg.hpp"
#include "bergkern/quadrature.hpp"

namespace bergkern {
namespace pet {

// sum |a_n| e^{-2 pi y n} at y = y_cap: with the lead factor split off this
// dominates |f| for all y >= y_cap.
template <typename Real>
Real coefficient_sum_at(const forms::PreparedForm<Real>& f, Real y) {
    const Real two_pi = Real(6.28318530717958647692528676655900577L);
    Real x = std::exp(-two_pi * y);
    Real s = 0, xn = 1;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        s += std::abs(f.coeffs[i]) * xn;
        xn *= x;
    }
    s += forms::coeff_tail_bound(f.env_C, f.env_s, x, f.coeffs.size());
    return s;
}

// |y^k f gbar| / y^2 <= C e^{-a y} y^{k-2} for y > y_cap.
template <typename Real>
TailMajorant<Real> pair_majorant(const forms::PreparedForm<Real>& f,
                                 const forms::PreparedForm<Real>& g, Real y_cap) {
    const Real two_pi = Real(6.28318530717958647692528676655900577L);
    TailMajorant<Real> t;
    t.C = coefficient_sum_at(f, y_cap) * coefficient_sum_at(g, y_cap);
    t.a = two_pi * (Real(f.lead.num + g.lead.num) / Real(24));
    t.p = f.weight.template value<Real>() - 2;
    return t;
}

// \int_F f gbar y^k dmu via the grid; Hermitian by construction.
template <typename Real>
std::complex<Real> petersson_inner(const QExpansion& f, const QExpansion& g,
                                   const QuadratureGrid<Real>& grid) {
    if (f.weight != g.weight) throw std::domain_error("petersson_inner: weight mismatch");
    auto pf = forms::prepare_form<Real>(f);
    auto pg = forms::prepare_form<Real>(g);
    Real k = f.weight.template value<Real>();
    auto integ = integrate_over_F(
        [&](const HPoint<Real>& z) {
            auto vf = forms::evaluate_form(pf, z).value;
            auto vg = forms::evaluate_form(pg, z).value;
            return std::pow(z.y, k) * vf * std::conj(vg);
        },
        grid, pair_majorant(pf, pg, grid.y_cap));
    return integ.value;
}

template <typename Real>
struct GramMatrix {
    HermMatrix<Real> entries;
    HalfInt weight;
    std::string grid_meta;
    Real tail = 0;  // aggregate tail bound over all pairs
    Real cond = 1;  // condition number of the diagonally equilibrated Gram
};

// Gram of a basis; each member is evaluated once per node and the pairwise
// sums run in fixed node order with compensation.
template <typename Real>
GramMatrix<Real> gram_matrix(const forms::FormBasis& basis, const QuadratureGrid<Real>& grid) {
    const std::size_t d = basis.members.size();
    GramMatrix<Real> gm;
    gm.weight = basis.weight;
    gm.grid_meta = "F-quadrature y_cap=" + std::to_string((double)grid.y_cap) + " panels=" +
                   std::to_string(grid.panels_x) + "x" + std::to_string(grid.panels_y) +
                   " gauss=" + std::to_string(grid.nodes_per_panel);
    gm.entries = HermMatrix<Real>(d);
    if (d == 0) return gm;

    std::vector<forms::PreparedForm<Real>> prep;
    prep.reserve(d);
    for (const auto& m : basis.members) prep.push_back(forms::prepare_form<Real>(m));

    const Real k = basis.weight.template value<Real>();
    const std::size_t nn = grid.nodes.size();
    std::vector<std::complex<Real>> vals(d);
    std::vector<std::complex<Real>> acc(d * d), comp(d * d);
    for (std::size_t node = 0; node < nn; ++node) {
        const auto& qn = grid.nodes[node];
        Real wyk = qn.w * std::pow(qn.z.y, k);
        for (std::size_t i = 0; i < d; ++i) vals[i] = forms::evaluate_form(prep[i], qn.z).value;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i; j < d; ++j) {
                std::complex<Real> term = wyk * vals[i] * std::conj(vals[j]);
                std::size_t idx = i * d + j;
                auto t = acc[idx] + term;
                comp[idx] += (std::abs(acc[idx].real()) >= std::abs(term.real()))
                                 ? (acc[idx] - t) + term
                                 : (term - t) + acc[idx];
                acc[idx] = t;
            }
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            auto v = acc[i * d + j] + comp[i * d + j];
            gm.entries(i, j) = v;
            gm.entries(j, i) = std::conj(v);
        }
    gm.entries.symmetrize();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
            gm.tail += tail_integral_bound(pair_majorant(prep[i], prep[j], grid.y_cap), grid.y_cap);

    // condition of the equilibrated matrix: raw norms are scale artifacts
    // of the echelon normalization, the angles are what matters
    HermMatrix<Real> C(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            C(i, j) = gm.entries(i, j) /
                      std::sqrt(gm.entries(i, i).real() * gm.entries(j, j).real());
    try {
        gm.cond = condition_number(C, cholesky(C));
    } catch (const GramNotPositiveDefinite&) {
        gm.cond = std::numeric_limits<Real>::infinity();
    }
    return gm;
}

template <typename Real>
struct OrthoBasis {
    HalfInt weight;
    forms::FormBasis raw;
    HermMatrix<Real> transform;  // A with A G A^* = I (lower triangular)
    Real residual = 0;           // max |A G A^* - I|
    Real gram_cond = 1;
    Real gram_tail = 0;
};

// Whitening transform A = L^{-1} D^{-1/2}, where D = diag(G) and
// D^{-1/2} G D^{-1/2} = L L^*. Refuses ill-conditioned Gram matrices.
template <typename Real>
OrthoBasis<Real> orthonormalize(const forms::FormBasis& basis, const GramMatrix<Real>& G,
                                Real cond_limit = Real(1e10)) {
    const std::size_t d = basis.members.size();
    if (G.entries.n != d) throw std::invalid_argument("orthonormalize: Gram dimension mismatch");
    OrthoBasis<Real> ob;
    ob.weight = basis.weight;
    ob.raw = basis;
    ob.transform = HermMatrix<Real>(d);
    ob.gram_cond = G.cond;
    ob.gram_tail = G.tail;
    if (d == 0) return ob;
    if (!(G.cond < cond_limit))
        throw GramNotPositiveDefinite("Gram condition number " + std::to_string((double)G.cond) +
                                      " exceeds limit; refusing to whiten");

    std::vector<Real> dinv(d);
    for (std::size_t i = 0; i < d; ++i) {
        Real gii = G.entries(i, i).real();
        if (!(gii > Real(0))) throw GramNotPositiveDefinite("non-positive Petersson norm");
        dinv[i] = Real(1) / std::sqrt(gii);
    }
    HermMatrix<Real> C(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) C(i, j) = G.entries(i, j) * dinv[i] * dinv[j];
    auto Linv = lower_inverse(cholesky(C));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j <= i; ++j) ob.transform(i, j) = Linv(i, j) * dinv[j];

    // residual of the orthonormality identity
    HermMatrix<Real> AG(d), R(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            AG(i, j) = {};
            for (std::size_t k = 0; k < d; ++k) AG(i, j) += ob.transform(i, k) * G.entries(k, j);
        }
    Real res = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            R(i, j) = {};
            for (std::size_t k = 0; k < d; ++k) R(i, j) += AG(i, k) * std::conj(ob.transform(j, k));
            res = std::max(res, std::abs(R(i, j) - (i == j ? Real(1) : Real(0))));
        }
    ob.residual = res;
    return ob;
}

}  // namespace pet
}  // namespace bergkern
