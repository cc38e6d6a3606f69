#include "cswire/real_mat.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace cswire {

namespace {

template <std::size_t N>
SymmetricEig<N> jacobi(RealMat<N> a) {
    RealMat<N> v = RealMat<N>::identity();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off += a.at(p, q) * a.at(p, q);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) {
                double apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
    }
    SymmetricEig<N> out;
    std::array<std::size_t, N> order{};
    for (std::size_t i = 0; i < N; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a.at(x, x) < a.at(y, y); });
    for (std::size_t j = 0; j < N; ++j) {
        out.values[j] = a.at(order[j], order[j]);
        for (std::size_t i = 0; i < N; ++i) out.vectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

}  // namespace

SymmetricEig<3> eig_symmetric(const Mat3& s) { return jacobi<3>(s); }
SymmetricEig<4> eig_symmetric(const Mat4& s) { return jacobi<4>(s); }

template <std::size_t N>
static double op_norm_impl(const RealMat<N>& m) {
    auto eig = jacobi<N>(m.transpose() * m);
    return std::sqrt(std::max(0.0, eig.values[N - 1]));
}

double op_norm(const Mat3& m) { return op_norm_impl<3>(m); }
double op_norm(const Mat4& m) { return op_norm_impl<4>(m); }

std::pair<std::array<double, 3>, double> top_singular_vector(const Mat3& m) {
    auto eig = eig_symmetric(m.transpose() * m);
    std::array<double, 3> v{eig.vectors.at(0, 2), eig.vectors.at(1, 2), eig.vectors.at(2, 2)};
    for (double x : v) {
        if (std::abs(x) > 1e-12) {
            if (x < 0)
                for (auto& y : v) y = -y;
            break;
        }
    }
    return {v, std::sqrt(std::max(0.0, eig.values[2]))};
}

std::vector<double> symmetric_eigenvalues(std::vector<double> m, int n) {
    auto at = [&](int r, int c) -> double& { return m[static_cast<std::size_t>(n * r + c)]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = at(i, i);
    std::sort(values.begin(), values.end());
    return values;
}

double spectral_radius(const Mat3& m) {
    // Characteristic polynomial l^3 - c2 l^2 + c1 l - c0.
    double c2 = m.at(0, 0) + m.at(1, 1) + m.at(2, 2);
    double c1 = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0) +
                m.at(0, 0) * m.at(2, 2) - m.at(0, 2) * m.at(2, 0) +
                m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1);
    double c0 = m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
                m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
                m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
    // Cardano in complex arithmetic; substitute l = t + c2/3.
    std::complex<double> p = c1 - c2 * c2 / 3.0;
    std::complex<double> q = -2.0 * c2 * c2 * c2 / 27.0 + c2 * c1 / 3.0 - c0;
    std::complex<double> disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    std::complex<double> u = std::pow(-q / 2.0 + disc, 1.0 / 3.0);
    if (std::abs(u) < 1e-100) u = std::pow(-q / 2.0 - disc, 1.0 / 3.0);
    if (std::abs(u) < 1e-100) return std::abs(c2 / 3.0);  // triple root
    double best = 0.0;
    const std::complex<double> w(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
        std::complex<double> uk = u;
        for (int j = 0; j < k; ++j) uk *= w;
        std::complex<double> root = uk - p / (3.0 * uk) + c2 / 3.0;
        best = std::max(best, std::abs(root));
    }
    return best;
}

}  // namespace cswire
