#include "cswire/measured_form.hpp"

#include <cmath>

namespace cswire {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

Vec2 MeasuredForm::cs_m(int j) const {
    double sign = j == 0 ? 1.0 : -1.0;
    return {kInvSqrt2 * (chi0.a + sign * chi1.a), kInvSqrt2 * (chi0.b + sign * chi1.b)};
}

MeasurementBasis MeasuredForm::physical_basis(int d) const {
    // A[m_0] = (A[idx0] + phase A[idx1])/sqrt(2) = sqrt(c_m)|phi_0><chi_0|,
    // so the row entries carry the conjugate of the Hermitizing phase.
    std::vector<std::vector<cplx>> rows(static_cast<std::size_t>(d),
                                        std::vector<cplx>(static_cast<std::size_t>(d), cplx(0, 0)));
    rows[0][static_cast<std::size_t>(idx0)] = kInvSqrt2;
    rows[0][static_cast<std::size_t>(idx1)] = kInvSqrt2 * std::conj(phase);
    rows[1][static_cast<std::size_t>(idx0)] = kInvSqrt2;
    rows[1][static_cast<std::size_t>(idx1)] = -kInvSqrt2 * std::conj(phase);
    std::size_t next = 2;
    for (int i = 0; i < d; ++i) {
        if (i == idx0 || i == idx1) continue;
        rows[next][static_cast<std::size_t>(i)] = 1.0;
        ++next;
    }
    return MeasurementBasis::from_rows(std::move(rows));
}

double MeasuredForm::reconstruction_residual(const KrausSet& k) const {
    double amp = std::sqrt(c_m / 2.0);
    Mat2 want0 = amp * (Mat2::outer(phi0, chi0) + Mat2::outer(phi1, chi1));
    Mat2 want1 = amp * (Mat2::outer(phi0, chi0) - Mat2::outer(phi1, chi1));
    double r0 = distance(k.ops[static_cast<std::size_t>(idx0)], want0);
    double r1 = distance(phase * k.ops[static_cast<std::size_t>(idx1)], want1);
    return std::max(r0, r1);
}

std::optional<MeasuredForm> measured_form(const KrausSet& k, double tol) {
    auto su = verify_stochastic_unitary(k, tol);
    if (!su.ok) return std::nullopt;
    const int d = k.dim();
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            if (std::abs(k.weights[static_cast<std::size_t>(i)] -
                         k.weights[static_cast<std::size_t>(j)]) > tol)
                continue;
            double cm = k.weights[static_cast<std::size_t>(i)] + k.weights[static_cast<std::size_t>(j)];
            Mat2 prod = k.ops[static_cast<std::size_t>(i)] *
                        k.ops[static_cast<std::size_t>(j)].adjoint();
            // Spectral criterion: eigenvalues must be antipodal with modulus
            // c_m/2 (equivalently Tr = 0 for a unitary-proportional product).
            if (std::abs(prod.trace()) > tol) continue;
            std::array<EigPair, 2> eig;
            try {
                eig = eig_normal(prod, tol);
            } catch (const validation_error&) {
                continue;
            }
            cplx mu = eig[0].value;
            Vec2 vplus = eig[0].vector, vminus = eig[1].vector;
            if (std::abs(mu + eig[1].value) > tol) continue;
            if (std::abs(std::abs(mu) - cm / 2.0) > tol) continue;
            // Pick the representative with phase in (-pi/2, pi/2]; ties at
            // +/- i resolved toward +i.
            if (mu.real() < -tol || (std::abs(mu.real()) <= tol && mu.imag() < 0)) {
                mu = -mu;
                std::swap(vplus, vminus);
            }
            MeasuredForm form;
            form.idx0 = i;
            form.idx1 = j;
            form.phase = mu / std::abs(mu);  // e^{i arg(mu)}, Hermitizes A[i] A[j]^dag
            form.phi0 = vplus.phase_normalized();
            form.phi1 = vminus.phase_normalized();
            form.c_m = cm;
            // chi_j = W^dag phi_j with W = A[i]/sqrt(c_m/2); taken verbatim,
            // since any extra phase on chi would break the reconstruction.
            Mat2 wdag = std::sqrt(2.0 / cm) * k.ops[static_cast<std::size_t>(i)].adjoint();
            form.chi0 = wdag * form.phi0;
            form.chi1 = wdag * form.phi1;
            if (form.reconstruction_residual(k) > tol) continue;
            return form;
        }
    }
    return std::nullopt;
}

ProjectiveProbabilities projective_probabilities(const MpsChain& chain, const Vec2& psi) {
    auto form = measured_form(chain.kraus);
    if (!form) throw validation_error("no measured form found");
    if (chain.cursor > chain.n) throw validation_error("chain cursor is exhausted");
    const PauliTransfer& t = chain.transfer();
    const int rest = chain.n - chain.cursor;
    double denom = normalization_factor(t, chain.right, density(psi.normalized()), rest + 1);
    double f0 = normalization_factor(t, chain.right, density(form->phi0), rest);
    double f1 = normalization_factor(t, chain.right, density(form->phi1), rest);
    ProjectiveProbabilities out;
    Vec2 psin = psi.normalized();
    out.p0 = form->c_m * f0 * std::norm(dot(form->chi0, psin)) / denom;
    out.p1 = form->c_m * f1 * std::norm(dot(form->chi1, psin)) / denom;
    out.residual = 1.0 - out.p0 - out.p1;
    return out;
}

ConditionReport check_condition(const MpsChain& chain, int k, double tol) {
    auto form = measured_form(chain.kraus);
    if (!form) throw validation_error("no measured form found");
    if (k < 1 || k > chain.n) throw validation_error("site index out of range");
    const PauliTransfer& t = chain.transfer();
    ConditionReport rep;
    rep.f0 = normalization_factor(t, chain.right, density(form->phi0), chain.n - k);
    rep.f1 = normalization_factor(t, chain.right, density(form->phi1), chain.n - k);
    rep.holds = std::abs(rep.f0 - rep.f1) <= tol;
    return rep;
}

}  // namespace cswire
