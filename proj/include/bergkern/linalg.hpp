// Dense Hermitian helpers sized for Gram matrices (dimension <= ~12):
// Cholesky, triangular inverse, power-iteration condition estimate.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bergkern {

struct GramNotPositiveDefinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename Real>
struct HermMatrix {
    std::size_t n = 0;
    std::vector<std::complex<Real>> a;  // row-major

    HermMatrix() = default;
    explicit HermMatrix(std::size_t dim) : n(dim), a(dim * dim) {}
    std::complex<Real>& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const std::complex<Real>& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    void symmetrize() {
        for (std::size_t i = 0; i < n; ++i) {
            (*this)(i, i) = std::complex<Real>((*this)(i, i).real(), 0);
            for (std::size_t j = i + 1; j < n; ++j) {
                auto m = ((*this)(i, j) + std::conj((*this)(j, i))) / Real(2);
                (*this)(i, j) = m;
                (*this)(j, i) = std::conj(m);
            }
        }
    }
};

// Lower Cholesky factor of a Hermitian positive definite matrix.
template <typename Real>
HermMatrix<Real> cholesky(const HermMatrix<Real>& A) {
    HermMatrix<Real> L(A.n);
    for (std::size_t i = 0; i < A.n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            std::complex<Real> s = A(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * std::conj(L(j, k));
            if (i == j) {
                if (!(s.real() > Real(0)))
                    throw GramNotPositiveDefinite("Cholesky pivot <= 0 at index " + std::to_string(i));
                L(i, i) = std::sqrt(s.real());
            } else {
                L(i, j) = s / L(j, j).real();
            }
        }
    }
    return L;
}

// Inverse of a lower-triangular matrix.
template <typename Real>
HermMatrix<Real> lower_inverse(const HermMatrix<Real>& L) {
    HermMatrix<Real> M(L.n);
    for (std::size_t i = 0; i < L.n; ++i) {
        M(i, i) = Real(1) / L(i, i).real();
        for (std::size_t j = 0; j < i; ++j) {
            std::complex<Real> s{};
            for (std::size_t k = j; k < i; ++k) s += L(i, k) * M(k, j);
            M(i, j) = -s / L(i, i).real();
        }
    }
    return M;
}

template <typename Real>
void solve_cholesky_inplace(const HermMatrix<Real>& L, std::vector<std::complex<Real>>& b) {
    for (std::size_t i = 0; i < L.n; ++i) {
        for (std::size_t k = 0; k < i; ++k) b[i] -= L(i, k) * b[k];
        b[i] /= L(i, i).real();
    }
    for (std::size_t i = L.n; i-- > 0;) {
        for (std::size_t k = i + 1; k < L.n; ++k) b[i] -= std::conj(L(k, i)) * b[k];
        b[i] /= L(i, i).real();
    }
}

// Spectral condition number via power iteration on A and on A^{-1}
// (through an already computed Cholesky factor). Deterministic start.
template <typename Real>
Real condition_number(const HermMatrix<Real>& A, const HermMatrix<Real>& L) {
    const std::size_t n = A.n;
    if (n == 0) return Real(1);
    auto normalize = [&](std::vector<std::complex<Real>>& v) {
        Real s = 0;
        for (auto& c : v) s += std::norm(c);
        s = std::sqrt(s);
        for (auto& c : v) c /= s;
        return s;
    };
    std::vector<std::complex<Real>> v(n), w(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::complex<Real>(1 + Real(i) / Real(n), Real(0.25) / Real(i + 1));
    normalize(v);
    Real lam_max = 0;
    for (int it = 0; it < 400; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = {};
            for (std::size_t j = 0; j < n; ++j) w[i] += A(i, j) * v[j];
        }
        lam_max = normalize(w);
        v.swap(w);
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = std::complex<Real>(1 + Real(i) / Real(n), Real(0.25) / Real(i + 1));
    normalize(v);
    Real inv_lam = 0;
    for (int it = 0; it < 400; ++it) {
        w = v;
        solve_cholesky_inplace(L, w);
        inv_lam = normalize(w);
        v.swap(w);
    }
    return lam_max * inv_lam;
}

}  // namespace bergkern
