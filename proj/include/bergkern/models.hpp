// Compact model surfaces with exact answers: P^1 with the Fubini-Study
// metric (area 4 pi) and the flat unit torus C/(Z+iZ) with the degree-m
// power of its positive line bundle. The torus Landau ladder constant is
// frozen here and pinned by the finite-difference oracle kept in the tests.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergkern {

struct TailToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace models {

inline constexpr long double pi_ld = 3.14159265358979323846264338327950288L;

// ----------------------------------------------------------------------
// P^1, sections of O(m), Fubini-Study normalized to area 4 pi.
// Monomial norms ||z^j||^2 = 4 pi j! (m-j)! / (m+1)! (Beta integrals).

template <typename Real = long double>
Real p1_area() { return 4 * Real(pi_ld); }

// Bergman density at a chart point, summed over the monomial basis in log
// space. Constant in z by symmetry; the mass identity B * Area = m + 1
// pins the normalization.
template <typename Real = long double>
Real p1_bergman(unsigned m, std::complex<Real> z) {
    Real r2 = std::norm(z);
    Real log1p_r2 = std::log1p(r2);
    Real logr2 = (r2 > Real(0)) ? std::log(r2) : Real(0);
    Real sum = 0;
    for (unsigned j = 0; j <= m; ++j) {
        Real logN = std::log(4 * Real(pi_ld)) + std::lgamma(Real(j + 1)) +
                    std::lgamma(Real(m - j + 1)) - std::lgamma(Real(m + 2));
        Real logterm = -Real(m) * log1p_r2 - logN;
        if (j > 0) {
            if (r2 == Real(0)) continue;
            logterm += Real(j) * logr2;
        }
        sum += std::exp(logterm);
    }
    return sum;
}

// det of c_1 against the model metric; the m -> infinity limit of B_m/m.
template <typename Real = long double>
Real p1_predicted_density() { return Real(1) / (4 * Real(pi_ld)); }

// ----------------------------------------------------------------------
// Flat torus, lattice Z + iZ, Euclidean metric (area 1).

template <typename Real = long double>
Real torus_area() { return Real(1); }

// Curvature eigenvalue alpha of ddbar phi for the degree-1 bundle relative
// to the flat metric: i ddbar phi = alpha * omega with alpha = 2 pi / area.
template <typename Real = long double>
Real torus_curvature_alpha() { return 2 * Real(pi_ld) / torus_area<Real>(); }

// Landau ladder spacing of the dbar-Laplacian per unit degree. Equal to
// alpha; the finite-difference oracle in the test suite reproduces the
// ladder c*m*q and the degeneracies directly from a discretized operator.
template <typename Real = long double>
Real torus_landau_constant() { return torus_curvature_alpha<Real>(); }

struct SpectrumLevel {
    long double eigenvalue;
    std::size_t degeneracy;
};

struct SpectrumTruncation {
    unsigned m = 0;
    std::vector<SpectrumLevel> levels;  // q = 0..Q
};

// lambda_q = q * c * m with degeneracy m per level; level 0 is the space
// of holomorphic sections (the m theta functions).
inline SpectrumTruncation torus_spectrum(unsigned m, std::size_t Q) {
    if (m < 1) throw std::invalid_argument("torus_spectrum: m >= 1 required");
    if (Q < 1) throw std::invalid_argument("torus_spectrum: Q >= 1 required");
    SpectrumTruncation s;
    s.m = m;
    s.levels.reserve(Q + 1);
    long double c = torus_landau_constant<long double>();
    for (std::size_t q = 0; q <= Q; ++q) s.levels.push_back({(long double)q * c * m, m});
    return s;
}

template <typename Real = long double>
Real torus_bergman(unsigned m) { return Real(m) / torus_area<Real>(); }

template <typename Real = long double>
struct HeatValue {
    Real t{};
    Real value{};
    Real truncation_tail{};
};

// Diagonal heat kernel: by translation invariance the per-level density is
// deg_q / area, so hk(t) = (1/area) sum_q deg_q e^{-(2t/m) lambda_q}.
// The dropped tail is geometric and reported.
template <typename Real = long double>
HeatValue<Real> torus_heat_kernel(unsigned m, Real t, std::size_t Q, Real tol = Real(0)) {
    if (!(t > Real(0))) throw std::domain_error("torus_heat_kernel: t > 0 required");
    auto spec = torus_spectrum(m, Q);
    Real area = torus_area<Real>();
    Real sum = 0;
    for (const auto& lvl : spec.levels)
        sum += Real(lvl.degeneracy) * std::exp(-(2 * t / Real(m)) * Real(lvl.eigenvalue));
    sum /= area;
    // weights are e^{-2 t c q}: tail of the geometric series past Q
    Real x = std::exp(-2 * t * torus_landau_constant<Real>());
    Real tail = Real(m) / area * std::pow(x, Real(Q + 1)) / (Real(1) - x);
    if (tol > Real(0) && !(tail <= tol))
        throw TailToleranceError("torus_heat_kernel: truncation tail above tolerance, increase Q");
    return {t, sum, tail};
}

// Right side of the sinh-kernel limit in complex dimension one, with the
// removable singularity at alpha = 0 filled in.
template <typename Real = long double>
Real bouche_rhs(Real alpha, Real t) {
    if (!(t > Real(0))) throw std::domain_error("bouche_rhs: t > 0 required");
    if (alpha == Real(0)) return Real(1) / (4 * Real(pi_ld) * t);
    return alpha / (4 * Real(pi_ld) * std::sinh(alpha * t));
}

template <typename Real = long double>
struct BoucheRow {
    unsigned m = 0;
    Real t{};
    Real inv_m_heat{};     // (1/m) hk(t)
    Real rhs{};            // alpha/(4 pi sinh(alpha t))
    Real rel_err{};
    Real rhs_shifted{};    // e^{alpha t} * rhs: limit of the ladder with a zero level
    Real rel_err_shifted{};
    Real tail{};
};

// Compares the exact spectral sum against the sinh prediction at the
// model's curvature eigenvalue, and against the same prediction shifted by
// e^{alpha t}, which accounts for the zero-based ladder.
template <typename Real = long double>
std::vector<BoucheRow<Real>> verify_bouche_limit(const std::vector<unsigned>& m_list, Real t,
                                                 std::size_t Q, Real tol = Real(1e-12)) {
    Real alpha = torus_curvature_alpha<Real>();
    std::vector<BoucheRow<Real>> rows;
    rows.reserve(m_list.size());
    for (unsigned m : m_list) {
        auto hk = torus_heat_kernel<Real>(m, t, Q, tol);
        BoucheRow<Real> r;
        r.m = m;
        r.t = t;
        r.inv_m_heat = hk.value / Real(m);
        r.rhs = bouche_rhs(alpha, t);
        r.rel_err = std::abs(r.inv_m_heat - r.rhs) / r.rhs;
        r.rhs_shifted = std::exp(alpha * t) * r.rhs;
        r.rel_err_shifted = std::abs(r.inv_m_heat - r.rhs_shifted) / r.rhs_shifted;
        r.tail = hk.truncation_tail / Real(m);
        rows.push_back(r);
    }
    return rows;
}

template <typename Real = long double>
struct P1Row {
    unsigned m = 0;
    Real B{};
    Real B_over_m{};
    Real predicted{};  // 1/(4 pi)
    Real rel_err{};
    Real const_dev{};  // max deviation over sample chart points
};

template <typename Real = long double>
std::vector<P1Row<Real>> verify_p1_scaling(const std::vector<unsigned>& m_list) {
    std::vector<P1Row<Real>> rows;
    rows.reserve(m_list.size());
    for (unsigned m : m_list) {
        P1Row<Real> r;
        r.m = m;
        r.B = p1_bergman<Real>(m, {Real(0), Real(0)});
        Real dev = 0;
        for (int i = 0; i < 100; ++i) {
            // deterministic spread of chart points, radius up to ~3
            Real rr = Real(3) * Real(i) / Real(100);
            Real th = Real(0.37) * Real(i);
            std::complex<Real> z(rr * std::cos(th), rr * std::sin(th));
            dev = std::max(dev, std::abs(p1_bergman<Real>(m, z) - r.B));
        }
        r.const_dev = dev;
        r.B_over_m = r.B / Real(m);
        r.predicted = p1_predicted_density<Real>();
        r.rel_err = std::abs(r.B_over_m - r.predicted) / r.predicted;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace models
}  // namespace bergkern
