#include "cswire/kraus.hpp"

#include <cmath>

namespace cswire {

KrausSet KrausSet::make(std::vector<Mat2> ops, std::string label) {
    if (ops.empty()) throw validation_error("Kraus set needs at least one operator");
    KrausSet k;
    k.ops = std::move(ops);
    k.label = std::move(label);
    k.weights.reserve(k.ops.size());
    for (const auto& a : k.ops) {
        for (const auto& z : a.e)
            if (!is_finite(z)) throw validation_error("non-finite Kraus entry");
        k.weights.push_back((a.adjoint() * a).trace().real() / 2.0);
    }
    return k;
}

Mat2 KrausSet::apply(const Mat2& rho) const {
    Mat2 out;
    for (const auto& a : ops) out += a * rho * a.adjoint();
    return out;
}

Mat2 KrausSet::apply_n(Mat2 rho, int times) const {
    for (int i = 0; i < times; ++i) rho = apply(rho);
    return rho;
}

// alpha_ij = Tr(sigma_j A[i]) / 2
static std::array<cplx, 4> pauli_coeffs(const Mat2& a) {
    return {(a.e[0] + a.e[3]) / 2.0,
            (a.e[1] + a.e[2]) / 2.0,
            (cplx(0, 1) * (a.e[1] - a.e[2])) / 2.0,
            (a.e[0] - a.e[3]) / 2.0};
}

CptpReport verify_cptp(const KrausSet& k, double tol) {
    static const int eps[3][3][3] = {// epsilon_{jkl}, indices 0..2 for sigma_1..3
                                     {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                                     {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                                     {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    CptpReport r;
    double sum_sq = 0.0;
    std::array<cplx, 3> sigma_coeff{};  // coefficient of sigma_l in sum A^dag A
    for (const auto& a : k.ops) {
        auto al = pauli_coeffs(a);
        for (const auto& z : al) sum_sq += std::norm(z);
        for (int l = 1; l <= 3; ++l) {
            cplx term = std::conj(al[0]) * al[l] + std::conj(al[l]) * al[0];
            for (int j = 1; j <= 3; ++j)
                for (int kk = 1; kk <= 3; ++kk) {
                    int e = eps[j - 1][kk - 1][l - 1];
                    if (e) term += cplx(0, e) * std::conj(al[j]) * al[kk];
                }
            sigma_coeff[l - 1] += term;
        }
    }
    r.cond1_residual = std::abs(sum_sq - 1.0);
    r.cond2_residual = 0.0;
    for (const auto& z : sigma_coeff) r.cond2_residual = std::max(r.cond2_residual, std::abs(z));
    r.trace_preserving = r.cond1_residual <= tol && r.cond2_residual <= tol;

    Mat2 dual;  // sum A A^dag
    for (const auto& a : k.ops) dual += a * a.adjoint();
    r.unital = distance(dual, Mat2::identity()) <= tol;
    return r;
}

StochasticUnitaryReport verify_stochastic_unitary(const KrausSet& k, double tol) {
    StochasticUnitaryReport r;
    r.weights = k.weights;
    double total = 0.0;
    for (int i = 0; i < k.dim(); ++i) {
        auto c = k.ops[i].proportional_to_unitary(tol);
        if (!c) {
            r.violation = "A[" + std::to_string(i) + "]^dag A[" + std::to_string(i) +
                          "] is not proportional to the identity";
            return r;
        }
        total += *c;
    }
    if (std::abs(total - 1.0) > tol) {
        r.violation = "weights c_i sum to " + std::to_string(total) + ", expected 1";
        return r;
    }
    r.ok = true;
    return r;
}

void require_cptp(const KrausSet& k, double tol) {
    auto rep = verify_cptp(k, tol);
    if (rep.cond1_residual > tol)
        throw validation_error("trace preservation (Cond1) violated: residual " +
                               std::to_string(rep.cond1_residual));
    if (rep.cond2_residual > tol)
        throw validation_error("trace preservation (Cond2) violated: residual " +
                               std::to_string(rep.cond2_residual));
}

void require_stochastic_unitary(const KrausSet& k, double tol) {
    auto rep = verify_stochastic_unitary(k, tol);
    if (!rep.ok) throw validation_error("not stochastic-unitary: " + rep.violation);
}

}  // namespace cswire
