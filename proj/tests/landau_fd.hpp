// Finite-difference oracle for the torus line-bundle Laplacian: a Peierls
// magnetic Laplacian on an N x N grid of the unit torus with total flux
// 2 pi m, lowest eigenvalues extracted by block Krylov projection. The
// continuum ladder is mu_q = B(2q+1), B = 2 pi m, with degeneracy m; the
// dbar-Laplacian ladder is recovered as (mu_q - mu_0)/2.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace landau_fd {

using cplx = std::complex<double>;

struct MagneticGrid {
    int N = 0;
    unsigned m = 0;
    // link phases: ux(i,j) multiplies the hop (i,j) -> (i+1,j), uy likewise
    std::vector<cplx> ux, uy;

    static MagneticGrid build(int N, unsigned m) {
        MagneticGrid g;
        g.N = N;
        g.m = m;
        g.ux.assign((std::size_t)N * N, cplx(1, 0));
        g.uy.assign((std::size_t)N * N, cplx(1, 0));
        const double two_pi = 6.283185307179586476925286766559;
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                std::size_t idx = (std::size_t)j * N + i;
                // uniform flux 2 pi m / N^2 per plaquette, Landau-type gauge
                g.uy[idx] = std::polar(1.0, two_pi * m * i / double(N * N));
                if (i == N - 1) g.ux[idx] = std::polar(1.0, -two_pi * m * j / double(N));
            }
        }
        return g;
    }

    // H psi = sum_mu (psi - U_mu psi(shift)) / h^2, h = 1/N
    void apply(const cplx* x, cplx* y) const {
        const double inv_h2 = double(N) * double(N);
        for (int j = 0; j < N; ++j) {
            int jp = (j + 1) % N, jm = (j + N - 1) % N;
            for (int i = 0; i < N; ++i) {
                int ip = (i + 1) % N, im = (i + N - 1) % N;
                std::size_t idx = (std::size_t)j * N + i;
                cplx hop = ux[idx] * x[(std::size_t)j * N + ip] +
                           std::conj(ux[(std::size_t)j * N + im]) * x[(std::size_t)j * N + im] +
                           uy[idx] * x[(std::size_t)jp * N + i] +
                           std::conj(uy[(std::size_t)jm * N + i]) * x[(std::size_t)jm * N + i];
                y[idx] = inv_h2 * (4.0 * x[idx] - hop);
            }
        }
    }
};

// Lowest Ritz values from a block Krylov space of dimension block*steps,
// fully reorthogonalized.
inline std::vector<double> lowest_eigenvalues(const MagneticGrid& g, int block, int steps,
                                              int want) {
    const std::size_t n = (std::size_t)g.N * g.N;
    std::vector<Eigen::VectorXcd> basis;
    basis.reserve((std::size_t)block * steps);

    auto orthonormalize_append = [&](Eigen::VectorXcd v) -> bool {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) v -= b.dot(v) * b;
        double nrm = v.norm();
        if (nrm < 1e-10) return false;
        v /= nrm;
        basis.push_back(std::move(v));
        return true;
    };

    // deterministic pseudo-random start block
    std::uint64_t state = 88172645463325252ULL;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return double(state % 1000003) / 1000003.0 - 0.5;
    };
    for (int b = 0; b < block; ++b) {
        Eigen::VectorXcd v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = cplx(next(), next());
        orthonormalize_append(std::move(v));
    }

    std::size_t frontier_begin = 0;
    for (int s = 1; s < steps; ++s) {
        std::size_t frontier_end = basis.size();
        for (std::size_t bi = frontier_begin; bi < frontier_end; ++bi) {
            Eigen::VectorXcd w(n);
            g.apply(basis[bi].data(), w.data());
            orthonormalize_append(std::move(w));
        }
        frontier_begin = frontier_end;
        if (basis.size() >= (std::size_t)block * steps) break;
    }

    const std::size_t dim = basis.size();
    Eigen::MatrixXcd T(dim, dim);
    Eigen::VectorXcd w(n);
    for (std::size_t j = 0; j < dim; ++j) {
        g.apply(basis[j].data(), w.data());
        for (std::size_t i = 0; i < dim; ++i) T(i, j) = basis[i].dot(w);
    }
    T = (T + T.adjoint()).eval() / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T);
    std::vector<double> out;
    for (int i = 0; i < want && i < (int)dim; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

struct LadderMeasurement {
    std::vector<double> levels;        // cluster means, dbar convention: (mu_q - mu_0)/2
    std::vector<int> degeneracies;     // cluster sizes
};

// Clusters the lowest eigenvalues into Landau levels and converts to the
// dbar ladder.
inline LadderMeasurement measure_ladder(int N, unsigned m, int nlevels) {
    MagneticGrid g = MagneticGrid::build(N, m);
    int want = nlevels * (int)m;
    int block = (int)m + 3;
    int steps = std::max(40, 600 / block);
    auto eig = lowest_eigenvalues(g, block, steps, want + (int)m);

    const double B = 2 * 3.141592653589793238462643 * m;
    LadderMeasurement out;
    std::size_t idx = 0;
    double mu0 = 0;
    for (int q = 0; q < nlevels && idx < eig.size(); ++q) {
        double target = B * (2 * q + 1);
        double sum = 0;
        int count = 0;
        while (idx < eig.size() && eig[idx] < target + B * 0.9) {
            sum += eig[idx];
            ++idx;
            ++count;
        }
        if (count == 0) break;
        double mean = sum / count;
        if (q == 0) mu0 = mean;
        out.levels.push_back((mean - mu0) / 2.0);
        out.degeneracies.push_back(count);
    }
    return out;
}

}  // namespace landau_fd
