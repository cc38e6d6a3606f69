#pragma once

// Shared helpers for the test suites. The routines here are deliberately
// independent of the library paths they check: transfer blocks come from
// direct Kraus conjugation, norms from power iteration, probabilities from
// the state-vector Born rule.

#include <array>
#include <cmath>
#include <vector>

#include "cswire/correlation.hpp"
#include "cswire/kraus.hpp"
#include "cswire/presets.hpp"
#include "cswire/rng.hpp"

namespace testutil {

using cswire::cplx;
using cswire::KrausSet;
using cswire::Mat2;
using cswire::Rng;
using cswire::Vec2;

// 3x3 Bloch block by conjugating each Pauli by each Kraus operator and
// reading off coefficients as traces.
inline std::array<std::array<double, 3>, 3> block_by_conjugation(const KrausSet& k) {
    std::array<std::array<double, 3>, 3> b{};
    for (int col = 0; col < 3; ++col) {
        Mat2 image;
        for (const auto& a : k.ops) image += a * cswire::pauli(col + 1) * a.adjoint();
        for (int row = 0; row < 3; ++row)
            b[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                0.5 * (cswire::pauli(row + 1) * image).trace().real();
    }
    return b;
}

inline std::array<std::array<double, 3>, 3> mul3(const std::array<std::array<double, 3>, 3>& x,
                                                 const std::array<std::array<double, 3>, 3>& y) {
    std::array<std::array<double, 3>, 3> r{};
    for (int i = 0; i < 3; ++i)
        for (int kk = 0; kk < 3; ++kk)
            for (int j = 0; j < 3; ++j)
                r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    x[static_cast<std::size_t>(i)][static_cast<std::size_t>(kk)] *
                    y[static_cast<std::size_t>(kk)][static_cast<std::size_t>(j)];
    return r;
}

// Operator 2-norm by power iteration on B^T B.
inline double op_norm_power_iteration(const std::array<std::array<double, 3>, 3>& b) {
    std::array<std::array<double, 3>, 3> bt{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            bt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                b[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    auto g = mul3(bt, b);
    std::array<double, 3> v{0.577350269189625764, 0.577350269189625841, 0.577350269189625612};
    double lambda = 0.0;
    for (int it = 0; it < 300; ++it) {
        std::array<double, 3> w{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                w[static_cast<std::size_t>(i)] +=
                    g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
        double n = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
        if (n < 1e-300) return 0.0;
        lambda = n;
        for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] / n;
    }
    return std::sqrt(lambda);
}

inline double iterate_norm_oracle(const KrausSet& k, int depth) {
    auto b = block_by_conjugation(k);
    std::array<std::array<double, 3>, 3> p{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int i = 0; i < depth; ++i) p = mul3(p, b);
    return op_norm_power_iteration(p);
}

// f_m by explicit repeated conjugation, no Pauli-transfer machinery.
inline double normalization_by_conjugation(const KrausSet& k, const Vec2& right, Mat2 psi, int m) {
    for (int i = 0; i < m; ++i) {
        Mat2 next;
        for (const auto& a : k.ops) next += a * psi * a.adjoint();
        psi = next;
    }
    return dot(right, psi * right).real();
}

// Random stochastic-unitary Kraus sets. `aligned` draws the exactly
// non-decaying family sqrt(c_i) G X^a Z(phi_i) G^dag; otherwise Haar
// unitaries with simplex weights.
inline KrausSet random_stochastic_unitary(Rng& rng, int d, bool aligned) {
    auto weights = rng.random_simplex(d);
    for (auto& w : weights) w = 0.05 / d + 0.95 * w;  // keep weights off zero
    double total = 0;
    for (double w : weights) total += w;
    for (auto& w : weights) w /= total;
    std::vector<Mat2> ops;
    if (aligned) {
        Mat2 g = rng.random_unitary();
        Mat2 xa = rng.uniform() < 0.5 ? Mat2::identity() : cswire::pauli(1);
        for (int i = 0; i < d; ++i) {
            Mat2 zu = cswire::rot_z(rng.uniform(-cswire::kPi, cswire::kPi));
            ops.push_back(std::sqrt(weights[static_cast<std::size_t>(i)]) *
                          (g * xa * zu * g.adjoint()));
        }
    } else {
        for (int i = 0; i < d; ++i)
            ops.push_back(std::sqrt(weights[static_cast<std::size_t>(i)]) * rng.random_unitary());
    }
    return KrausSet::make(std::move(ops));
}

// Haar draw conditioned on decisive convergence at the stated depth; the
// iterate is evaluated with the conjugation oracle above.
inline KrausSet random_decisively_convergent(Rng& rng, int d, int depth = 100, double cut = 1e-6) {
    for (int tries = 0; tries < 4000; ++tries) {
        KrausSet k = random_stochastic_unitary(rng, d, false);
        if (iterate_norm_oracle(k, depth) <= cut) return k;
    }
    throw std::runtime_error("no decisively convergent draw found");
}

inline cswire::CanonicalClassParams random_canonical(Rng& rng, int d) {
    cswire::CanonicalClassParams p;
    auto w = rng.random_simplex(d - 1);  // one weight for the pair, d-2 extras
    p.c_m = 0.2 + 0.8 * w[0];
    p.theta0 = rng.uniform(-cswire::kPi, cswire::kPi);
    double rest = 0;
    for (int j = 1; j < d - 1; ++j) rest += w[static_cast<std::size_t>(j)];
    for (int j = 1; j < d - 1; ++j) {
        cswire::CanonicalClassParams::Extra e;
        e.theta = rng.uniform(-cswire::kPi, cswire::kPi);
        e.pauli = static_cast<int>(rng.bits() % 4);
        e.weight = (1.0 - p.c_m) * w[static_cast<std::size_t>(j)] / rest;
        p.extra.push_back(e);
    }
    if (d == 2) p.c_m = 1.0;
    return p;
}

// Random Hermitian observable, rescaled to operator norm <= limit.
inline std::vector<cplx> random_hermitian(Rng& rng, int d, double limit = 1.0) {
    std::vector<cplx> m(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
        m[static_cast<std::size_t>(d * r + r)] = rng.gaussian();
        for (int c = r + 1; c < d; ++c) {
            cplx z = rng.gaussian_cplx();
            m[static_cast<std::size_t>(d * r + c)] = z;
            m[static_cast<std::size_t>(d * c + r)] = std::conj(z);
        }
    }
    auto obs = cswire::SiteObservable::make(m, d, 1);
    double norm = obs.op_norm_bound();
    if (norm > 1e-300)
        for (auto& z : m) z *= limit / norm;
    return m;
}

}  // namespace testutil
