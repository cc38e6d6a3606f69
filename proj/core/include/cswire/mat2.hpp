#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "cswire/common.hpp"

namespace cswire {

using cplx = std::complex<double>;

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Column vector in the 2-dimensional correlation space.
struct Vec2 {
    cplx a{0.0, 0.0};
    cplx b{0.0, 0.0};

    double norm_sq() const { return std::norm(a) + std::norm(b); }
    double norm() const { return std::sqrt(norm_sq()); }
    bool finite() const { return is_finite(a) && is_finite(b); }

    Vec2 normalized() const;
    // (-conj(b), conj(a)): the unique orthogonal direction up to phase.
    Vec2 orthogonal() const { return {-std::conj(b), std::conj(a)}; }
    // Rescales so the first component above `cutoff` in magnitude is real positive.
    Vec2 phase_normalized(double cutoff = 1e-14) const;
};

inline cplx dot(const Vec2& x, const Vec2& y) {  // <x|y>
    return std::conj(x.a) * y.a + std::conj(x.b) * y.b;
}
inline Vec2 operator*(cplx s, const Vec2& v) { return {s * v.a, s * v.b}; }
inline Vec2 operator+(const Vec2& x, const Vec2& y) { return {x.a + y.a, x.b + y.b}; }
inline Vec2 operator-(const Vec2& x, const Vec2& y) { return {x.a - y.a, x.b - y.b}; }

// Complex 2x2 matrix, row-major. Constructors reject non-finite entries.
struct Mat2 {
    std::array<cplx, 4> e{};  // e[0]=m00 e[1]=m01 e[2]=m10 e[3]=m11

    Mat2() = default;
    Mat2(cplx m00, cplx m01, cplx m10, cplx m11);

    cplx& at(int r, int c) { return e[2 * r + c]; }
    cplx at(int r, int c) const { return e[2 * r + c]; }

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 zero() { return Mat2{}; }
    // outer(x, y) = |x><y|
    static Mat2 outer(const Vec2& x, const Vec2& y);

    Mat2 adjoint() const { return {std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}; }
    Mat2 transpose() const { return {e[0], e[2], e[1], e[3]}; }
    Mat2 conjugate() const { return {std::conj(e[0]), std::conj(e[1]), std::conj(e[2]), std::conj(e[3])}; }
    cplx trace() const { return e[0] + e[3]; }
    cplx det() const { return e[0] * e[3] - e[1] * e[2]; }
    double frobenius_norm() const;
    // Largest singular value.
    double op_norm() const;

    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;
    // A^dag A = c I with c > 0: returns c, or nullopt.
    std::optional<double> proportional_to_unitary(double tol) const;

    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);
    Mat2& operator*=(cplx s);
};

Mat2 operator+(Mat2 x, const Mat2& y);
Mat2 operator-(Mat2 x, const Mat2& y);
Mat2 operator*(cplx s, Mat2 x);
Mat2 operator*(const Mat2& x, const Mat2& y);
Vec2 operator*(const Mat2& m, const Vec2& v);

// Pauli basis order used throughout: (sigma_0, sigma_1, sigma_2, sigma_3) = (I, X, Y, Z).
Mat2 pauli(int k);
Mat2 hadamard();
// Z(phi) = exp(-i phi Z / 2)
Mat2 rot_z(double phi);
// exp(i theta Y); real rotation matrix [[cos, sin], [-sin, cos]].
Mat2 exp_iy(double theta);

double distance(const Mat2& x, const Mat2& y);
// min over global phase of ||x - e^{i g} y||_F, and the optimal phase.
std::pair<double, cplx> distance_up_to_phase(const Mat2& x, const Mat2& y);

struct EigPair {
    cplx value;
    Vec2 vector;  // unit, phase-normalized
};

// Eigendecomposition of a Hermitian 2x2; pairs ordered by descending eigenvalue.
std::array<EigPair, 2> eig_hermitian(const Mat2& h);
// Eigendecomposition of a normal 2x2 (unitary eigenvectors). Throws
// validation_error if the matrix is not normal within tol.
std::array<EigPair, 2> eig_normal(const Mat2& m, double tol = 1e-9);

// Principal eigvector of a positive semidefinite unit-trace matrix, plus the
// deviation of rho from that rank-1 projector (0 for pure states).
std::pair<Vec2, double> principal_state(const Mat2& rho);

}  // namespace cswire
