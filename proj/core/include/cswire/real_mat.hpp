#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace cswire {

// Small real matrices backing the Pauli-basis representation of channels.
// Fixed tiny dimensions, so everything here is closed-form or Jacobi sweeps;
// no external solver.

template <std::size_t N>
struct RealMat {
    std::array<double, N * N> e{};

    double& at(std::size_t r, std::size_t c) { return e[N * r + c]; }
    double at(std::size_t r, std::size_t c) const { return e[N * r + c]; }

    static RealMat identity() {
        RealMat m;
        for (std::size_t i = 0; i < N; ++i) m.at(i, i) = 1.0;
        return m;
    }

    RealMat transpose() const {
        RealMat t;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    friend RealMat operator*(const RealMat& x, const RealMat& y) {
        RealMat r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                double v = x.at(i, k);
                if (v == 0.0) continue;
                for (std::size_t j = 0; j < N; ++j) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }

    friend RealMat operator+(RealMat x, const RealMat& y) {
        for (std::size_t i = 0; i < N * N; ++i) x.e[i] += y.e[i];
        return x;
    }
    friend RealMat operator*(double s, RealMat x) {
        for (auto& v : x.e) v *= s;
        return x;
    }

    std::array<double, N> apply(const std::array<double, N>& v) const {
        std::array<double, N> r{};
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r[i] += at(i, j) * v[j];
        return r;
    }
};

using Mat3 = RealMat<3>;
using Mat4 = RealMat<4>;

template <std::size_t N>
RealMat<N> matrix_power(RealMat<N> base, unsigned long exponent) {
    RealMat<N> result = RealMat<N>::identity();
    while (exponent) {
        if (exponent & 1u) result = result * base;
        base = base * base;
        exponent >>= 1u;
    }
    return result;
}

// Eigenvalues (ascending) and eigenvectors (columns) of a symmetric matrix,
// by cyclic Jacobi rotations.
template <std::size_t N>
struct SymmetricEig {
    std::array<double, N> values{};
    RealMat<N> vectors;  // column j = eigenvector of values[j]
};

SymmetricEig<3> eig_symmetric(const Mat3& s);
SymmetricEig<4> eig_symmetric(const Mat4& s);

// Operator 2-norm (largest singular value).
double op_norm(const Mat3& m);
double op_norm(const Mat4& m);

// Largest right-singular vector of m, with a deterministic sign (first
// component of magnitude > 1e-12 made positive), plus the singular value.
std::pair<std::array<double, 3>, double> top_singular_vector(const Mat3& m);

// Spectral radius: largest |eigenvalue| from the characteristic cubic.
double spectral_radius(const Mat3& m);

// Eigenvalues (ascending) of a dense symmetric n x n matrix, row-major.
// Jacobi sweeps; intended for the small embeddings used by observables.
std::vector<double> symmetric_eigenvalues(std::vector<double> m, int n);

}  // namespace cswire
