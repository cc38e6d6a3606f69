#include "cswire/mat2.hpp"

#include <algorithm>

namespace cswire {

Vec2 Vec2::normalized() const {
    double n = norm();
    if (n < 1e-300) throw validation_error("cannot normalize a zero vector");
    return {a / n, b / n};
}

Vec2 Vec2::phase_normalized(double cutoff) const {
    cplx lead = std::abs(a) > cutoff ? a : b;
    double m = std::abs(lead);
    if (m < cutoff) return *this;
    cplx ph = std::conj(lead) / m;
    return {ph * a, ph * b};
}

Mat2::Mat2(cplx m00, cplx m01, cplx m10, cplx m11) : e{m00, m01, m10, m11} {
    for (const auto& z : e)
        if (!is_finite(z)) throw validation_error("non-finite matrix entry");
}

Mat2 Mat2::outer(const Vec2& x, const Vec2& y) {
    return {x.a * std::conj(y.a), x.a * std::conj(y.b), x.b * std::conj(y.a), x.b * std::conj(y.b)};
}

double Mat2::frobenius_norm() const {
    double s = 0;
    for (const auto& z : e) s += std::norm(z);
    return std::sqrt(s);
}

double Mat2::op_norm() const {
    // Largest eigenvalue of A^dag A, closed form for the 2x2 Hermitian case.
    Mat2 g = adjoint() * (*this);
    double t = g.trace().real();
    double d = g.det().real();
    double disc = std::max(0.0, t * t / 4.0 - d);
    return std::sqrt(std::max(0.0, t / 2.0 + std::sqrt(disc)));
}

bool Mat2::is_hermitian(double tol) const {
    return distance(*this, adjoint()) <= tol;
}

bool Mat2::is_unitary(double tol) const {
    return distance(adjoint() * (*this), identity()) <= tol;
}

std::optional<double> Mat2::proportional_to_unitary(double tol) const {
    Mat2 g = adjoint() * (*this);
    double c = g.trace().real() / 2.0;
    if (c <= tol) return std::nullopt;
    if (distance(g, c * identity()) > tol * std::max(1.0, c)) return std::nullopt;
    return c;
}

Mat2& Mat2::operator+=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) e[i] += o.e[i];
    return *this;
}
Mat2& Mat2::operator-=(const Mat2& o) {
    for (int i = 0; i < 4; ++i) e[i] -= o.e[i];
    return *this;
}
Mat2& Mat2::operator*=(cplx s) {
    for (auto& z : e) z *= s;
    return *this;
}

Mat2 operator+(Mat2 x, const Mat2& y) { return x += y; }
Mat2 operator-(Mat2 x, const Mat2& y) { return x -= y; }
Mat2 operator*(cplx s, Mat2 x) { return x *= s; }

Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 r;
    r.e[0] = x.e[0] * y.e[0] + x.e[1] * y.e[2];
    r.e[1] = x.e[0] * y.e[1] + x.e[1] * y.e[3];
    r.e[2] = x.e[2] * y.e[0] + x.e[3] * y.e[2];
    r.e[3] = x.e[2] * y.e[1] + x.e[3] * y.e[3];
    return r;
}

Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.e[0] * v.a + m.e[1] * v.b, m.e[2] * v.a + m.e[3] * v.b};
}

Mat2 pauli(int k) {
    switch (k) {
        case 0: return Mat2::identity();
        case 1: return {0, 1, 1, 0};
        case 2: return {0, cplx(0, -1), cplx(0, 1), 0};
        case 3: return {1, 0, 0, -1};
        default: throw validation_error("pauli index out of range 0..3");
    }
}

Mat2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
}

Mat2 rot_z(double phi) {
    return {std::polar(1.0, -phi / 2.0), 0, 0, std::polar(1.0, phi / 2.0)};
}

Mat2 exp_iy(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return {c, s, -s, c};
}

double distance(const Mat2& x, const Mat2& y) { return (x - y).frobenius_norm(); }

std::pair<double, cplx> distance_up_to_phase(const Mat2& x, const Mat2& y) {
    // argmin_g ||x - e^{ig} y||_F has e^{ig} = phase of <y, x>_F.
    cplx ip = 0;
    for (int i = 0; i < 4; ++i) ip += std::conj(y.e[i]) * x.e[i];
    cplx ph = std::abs(ip) > 1e-300 ? ip / std::abs(ip) : cplx(1, 0);
    return {distance(x, ph * y), ph};
}

static Vec2 null_vector(const Mat2& m) {
    // Unit vector v with m v ~ 0, for a (near-)singular 2x2. The larger row
    // gives the better-conditioned solution.
    double r0 = std::norm(m.e[0]) + std::norm(m.e[1]);
    double r1 = std::norm(m.e[2]) + std::norm(m.e[3]);
    Vec2 v;
    if (r0 >= r1)
        v = {-m.e[1], m.e[0]};
    else
        v = {-m.e[3], m.e[2]};
    if (v.norm() < 1e-14) return {1, 0};  // m ~ 0: anything works
    return v.normalized().phase_normalized();
}

std::array<EigPair, 2> eig_hermitian(const Mat2& h) {
    double t = h.trace().real();
    double d = h.det().real();
    double disc = std::max(0.0, t * t / 4.0 - d);
    double l0 = t / 2.0 + std::sqrt(disc);
    double l1 = t / 2.0 - std::sqrt(disc);
    Vec2 v0 = null_vector(h - cplx(l0) * Mat2::identity());
    Vec2 v1 = {-std::conj(v0.b), std::conj(v0.a)};
    v1 = v1.phase_normalized();
    return {EigPair{l0, v0}, EigPair{l1, v1}};
}

std::array<EigPair, 2> eig_normal(const Mat2& m, double tol) {
    if (distance(m * m.adjoint(), m.adjoint() * m) > tol)
        throw validation_error("matrix is not normal; eigenvectors would not be orthogonal");
    cplx t = m.trace();
    cplx disc = std::sqrt(t * t / 4.0 - m.det());
    cplx l0 = t / 2.0 + disc;
    cplx l1 = t / 2.0 - disc;
    Vec2 v0, v1;
    if (std::abs(l0 - l1) < 1e-14) {
        v0 = {1, 0};
        v1 = {0, 1};
    } else {
        v0 = null_vector(m - l0 * Mat2::identity());
        v1 = Vec2{-std::conj(v0.b), std::conj(v0.a)}.phase_normalized();
    }
    return {EigPair{l0, v0}, EigPair{l1, v1}};
}

std::pair<Vec2, double> principal_state(const Mat2& rho) {
    auto eig = eig_hermitian(rho);
    const Vec2& v = eig[0].vector;
    double dev = distance(rho, eig[0].value.real() * Mat2::outer(v, v));
    return {v, dev};
}

}  // namespace cswire
