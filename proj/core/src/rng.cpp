#include "cswire/rng.hpp"

#include <cmath>

namespace cswire {

static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Rng Rng::for_shot(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index + 1)));
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

int Rng::pick(std::span<const double> probabilities) {
    double total = 0.0;
    for (double p : probabilities) total += std::max(0.0, p);
    double x = uniform() * total;
    double acc = 0.0;
    for (std::size_t j = 0; j < probabilities.size(); ++j) {
        acc += std::max(0.0, probabilities[j]);
        if (x < acc) return static_cast<int>(j);
    }
    return static_cast<int>(probabilities.size()) - 1;
}

Vec2 Rng::random_pure_state() {
    Vec2 v{gaussian_cplx(), gaussian_cplx()};
    return v.normalized();
}

Mat2 Rng::random_unitary() {
    // Haar on U(2): Haar SU(2) from a unit quaternion times a random phase.
    double q0 = gaussian(), q1 = gaussian(), q2 = gaussian(), q3 = gaussian();
    double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
    if (n < 1e-300) return Mat2::identity();
    q0 /= n, q1 /= n, q2 /= n, q3 /= n;
    Mat2 su{cplx(q0, q3), cplx(q2, q1), cplx(-q2, q1), cplx(q0, -q3)};
    return std::polar(1.0, uniform(0.0, 2.0 * kPi)) * su;
}

std::vector<std::vector<cplx>> Rng::random_unitary_rows(int d) {
    std::vector<std::vector<cplx>> rows(d, std::vector<cplx>(d));
    for (auto& row : rows)
        for (auto& z : row) z = gaussian_cplx();
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < i; ++j) {
            cplx ip = 0;
            for (int k = 0; k < d; ++k) ip += std::conj(rows[j][k]) * rows[i][k];
            for (int k = 0; k < d; ++k) rows[i][k] -= ip * rows[j][k];
        }
        double n2 = 0;
        for (const auto& z : rows[i]) n2 += std::norm(z);
        double n = std::sqrt(n2);
        for (auto& z : rows[i]) z /= n;
    }
    return rows;
}

std::vector<double> Rng::random_simplex(int d) {
    std::vector<double> w(d);
    double total = 0.0;
    for (auto& x : w) {
        double u = 0.0;
        do {
            u = uniform();
        } while (u <= 0.0);
        x = -std::log(u);
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

}  // namespace cswire
