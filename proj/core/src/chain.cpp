#include "cswire/chain.hpp"

#include <cmath>

namespace cswire {

std::array<double, 4> density_coeffs(const Mat2& rho) {
    auto c = pauli_decompose(rho);
    return {c[0].real(), c[1].real(), c[2].real(), c[3].real()};
}

std::array<double, 4> boundary_coeffs(const Vec2& r) {
    std::array<double, 4> out{};
    for (int j = 0; j < 4; ++j) out[j] = dot(r, pauli(j) * r).real();
    return out;
}

double normalization_factor(const PauliTransfer& t, const Vec2& right, const Mat2& psi, int m) {
    if (m < 0) throw validation_error("step count must be >= 0");
    auto v = matrix_power(t.m, static_cast<unsigned long>(m)).apply(density_coeffs(psi));
    auto r = boundary_coeffs(right);
    return v[0] * r[0] + v[1] * r[1] + v[2] * r[2] + v[3] * r[3];
}

double normalization_factor(const KrausSet& k, const Vec2& right, const Mat2& psi, int m) {
    return normalization_factor(transfer_matrix(k), right, psi, m);
}

Vec2 MpsChain::cs_vector(double tol) const {
    auto [v, dev] = principal_state(cs_state);
    if (dev > tol)
        throw validation_error("correlation-space state is not rank-1 (deviation " +
                               std::to_string(dev) + ")");
    return v;
}

const PauliTransfer& MpsChain::transfer() const {
    if (!transfer_) throw validation_error("chain was not built through make_chain");
    return *transfer_;
}

MpsChain make_chain(const KrausSet& k, const Vec2& left, const Vec2& right, int n, double tol) {
    if (n < 1) throw validation_error("chain needs at least one site");
    require_cptp(k, tol);
    if (std::abs(left.norm() - 1.0) > tol) throw validation_error("left boundary vector is not unit norm");
    if (std::abs(right.norm() - 1.0) > tol) throw validation_error("right boundary vector is not unit norm");
    MpsChain c;
    c.n = n;
    c.kraus = k;
    c.left = left;
    c.right = right;
    c.cs_state = density(left);
    c.cursor = 1;
    c.transfer_ = std::make_shared<const PauliTransfer>(transfer_matrix(k, tol));
    return c;
}

std::vector<cplx> full_state_vector(const MpsChain& chain, double tol) {
    const int d = chain.kraus.dim();
    const int m = chain.remaining();
    if (m <= 0) throw validation_error("no unmeasured sites left");
    double count = std::pow(static_cast<double>(d), m);
    if (count > 1e7) throw validation_error("state vector would exceed the 10^7 amplitude guard");
    const auto total = static_cast<std::size_t>(count + 0.5);

    Vec2 start = chain.cs_vector(tol);
    std::vector<cplx> amps(total);

    // Depth-first over digit strings, reusing the correlation-space prefix.
    // Digit for site (cursor + depth) has stride d^depth.
    std::vector<Vec2> stack(static_cast<std::size_t>(m) + 1);
    stack[0] = start;

    auto recurse = [&](auto&& self, int depth, std::size_t base, std::size_t step) -> void {
        if (depth == m) {
            amps[base] = dot(chain.right, stack[static_cast<std::size_t>(depth)]);
            return;
        }
        for (int i = 0; i < d; ++i) {
            stack[static_cast<std::size_t>(depth) + 1] =
                chain.kraus.ops[static_cast<std::size_t>(i)] * stack[static_cast<std::size_t>(depth)];
            self(self, depth + 1, base + static_cast<std::size_t>(i) * step, step * static_cast<std::size_t>(d));
        }
    };
    recurse(recurse, 0, 0, 1);

    double norm_sq = 0.0;
    for (const auto& a : amps) norm_sq += std::norm(a);
    if (norm_sq <= 0.0) throw validation_error("state vector has zero norm");
    double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= inv;
    return amps;
}

}  // namespace cswire
