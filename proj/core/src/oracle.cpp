#include "cswire/oracle.hpp"

#include <cmath>

namespace cswire {

namespace {

void check_bases(const MpsChain& chain, const std::vector<MeasurementBasis>& per_site) {
    if (static_cast<int>(per_site.size()) != chain.remaining())
        throw validation_error("need one basis per unmeasured site");
    for (const auto& b : per_site)
        if (b.dim() != chain.kraus.dim()) throw validation_error("basis dimension mismatch");
}

// In-place basis rotation of the amplitude tensor at one site position
// (0-based within the unmeasured block).
void rotate_site(std::vector<cplx>& amps, int d, int pos, const MeasurementBasis& basis) {
    std::size_t stride = 1;
    for (int i = 0; i < pos; ++i) stride *= static_cast<std::size_t>(d);
    std::size_t dd = static_cast<std::size_t>(d);
    std::size_t block = stride * dd;
    std::vector<cplx> tmp(dd);
    for (std::size_t outer = 0; outer < amps.size(); outer += block)
        for (std::size_t inner = 0; inner < stride; ++inner) {
            for (std::size_t j = 0; j < dd; ++j) {
                cplx acc = 0;
                for (std::size_t i = 0; i < dd; ++i)
                    acc += std::conj(basis.rows[j][i]) * amps[outer + inner + i * stride];
                tmp[j] = acc;
            }
            for (std::size_t j = 0; j < dd; ++j) amps[outer + inner + j * stride] = tmp[j];
        }
}

// Applies a d x d operator (not a basis rotation: no conjugation) at a site.
void apply_site_operator(std::vector<cplx>& amps, int d, int pos, const SiteObservable& o) {
    std::size_t stride = 1;
    for (int i = 0; i < pos; ++i) stride *= static_cast<std::size_t>(d);
    std::size_t dd = static_cast<std::size_t>(d);
    std::size_t block = stride * dd;
    std::vector<cplx> tmp(dd);
    for (std::size_t outer = 0; outer < amps.size(); outer += block)
        for (std::size_t inner = 0; inner < stride; ++inner) {
            for (std::size_t j = 0; j < dd; ++j) {
                cplx acc = 0;
                for (std::size_t i = 0; i < dd; ++i)
                    acc += o.at(static_cast<int>(j), static_cast<int>(i)) * amps[outer + inner + i * stride];
                tmp[j] = acc;
            }
            for (std::size_t j = 0; j < dd; ++j) amps[outer + inner + j * stride] = tmp[j];
        }
}

}  // namespace

std::vector<double> oracle_joint_distribution(const MpsChain& chain,
                                              const std::vector<MeasurementBasis>& per_site) {
    check_bases(chain, per_site);
    auto amps = full_state_vector(chain);
    const int d = chain.kraus.dim();
    for (int pos = 0; pos < chain.remaining(); ++pos)
        rotate_site(amps, d, pos, per_site[static_cast<std::size_t>(pos)]);
    std::vector<double> probs(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) probs[i] = std::norm(amps[i]);
    return probs;
}

std::vector<double> transfer_joint_distribution(const MpsChain& chain,
                                                const std::vector<MeasurementBasis>& per_site) {
    check_bases(chain, per_site);
    const int d = chain.kraus.dim();
    const int m = chain.remaining();
    double count = std::pow(static_cast<double>(d), m);
    if (count > 1e7) throw validation_error("joint distribution would exceed the 10^7 entry guard");
    const auto total = static_cast<std::size_t>(count + 0.5);

    // Right environments: env[rest] = (M^T)^rest applied to the boundary
    // coefficient vector, so <R| A^rest(sigma) |R> = env[rest] . coeffs(sigma).
    const Mat4 mt = chain.transfer().m.transpose();
    std::vector<std::array<double, 4>> env(static_cast<std::size_t>(m) + 1);
    env[0] = boundary_coeffs(chain.right);
    for (int i = 1; i <= m; ++i) env[static_cast<std::size_t>(i)] = mt.apply(env[static_cast<std::size_t>(i) - 1]);

    // Effective operators per site and outcome.
    std::vector<std::vector<Mat2>> eff(static_cast<std::size_t>(m));
    for (int pos = 0; pos < m; ++pos)
        for (int j = 0; j < d; ++j)
            eff[static_cast<std::size_t>(pos)].push_back(
                effective_operator(chain.kraus, per_site[static_cast<std::size_t>(pos)].rows[static_cast<std::size_t>(j)]).op);

    auto close = [&](int rest, const Mat2& rho) {
        auto v = density_coeffs(rho);
        const auto& e = env[static_cast<std::size_t>(rest)];
        return e[0] * v[0] + e[1] * v[1] + e[2] * v[2] + e[3] * v[3];
    };

    std::vector<double> probs(total, 0.0);
    // Depth-first product of conditionals; every conditional contracts the
    // unmeasured suffix through the precomputed channel-power environments.
    auto walk = [&](auto&& self, int pos, std::size_t base, std::size_t step, const Mat2& rho,
                    double prob) -> void {
        if (pos == m) {
            probs[base] = prob;
            return;
        }
        double denom = close(m - pos, rho);
        for (int j = 0; j < d; ++j) {
            const Mat2& a = eff[static_cast<std::size_t>(pos)][static_cast<std::size_t>(j)];
            Mat2 branch = a * rho * a.adjoint();
            double cond = denom > 1e-300 ? close(m - pos - 1, branch) / denom : 0.0;
            self(self, pos + 1, base + static_cast<std::size_t>(j) * step,
                 step * static_cast<std::size_t>(d), branch, prob * cond);
        }
    };
    walk(walk, 0, 0, 1, chain.cs_state, 1.0);
    return probs;
}

double oracle_expectation(const MpsChain& chain, const SiteObservable& o) {
    if (o.site < chain.cursor || o.site > chain.n)
        throw validation_error("observable site out of range");
    auto amps = full_state_vector(chain);
    auto moved = amps;
    apply_site_operator(moved, chain.kraus.dim(), o.site - chain.cursor, o);
    cplx acc = 0;
    for (std::size_t i = 0; i < amps.size(); ++i) acc += std::conj(amps[i]) * moved[i];
    return acc.real();
}

double oracle_two_point_connected(const MpsChain& chain, const SiteObservable& oa,
                                  const SiteObservable& ob) {
    if (oa.site >= ob.site) throw validation_error("requires Oa.site < Ob.site");
    auto amps = full_state_vector(chain);
    const int d = chain.kraus.dim();
    auto apply_one = [&](const SiteObservable& o) {
        auto moved = amps;
        apply_site_operator(moved, d, o.site - chain.cursor, o);
        return moved;
    };
    auto inner = [&](const std::vector<cplx>& x) {
        cplx acc = 0;
        for (std::size_t i = 0; i < amps.size(); ++i) acc += std::conj(amps[i]) * x[i];
        return acc.real();
    };
    auto a_only = apply_one(oa);
    auto b_only = apply_one(ob);
    auto both = b_only;
    apply_site_operator(both, d, oa.site - chain.cursor, oa);
    return inner(both) - inner(a_only) * inner(b_only);
}

}  // namespace cswire
