#pragma once

#include <optional>

#include "cswire/measurement.hpp"

namespace cswire {

// Rewriting of a Kraus pair (i0, i1) with equal weights c_m/2 as
//   A[i0] = sqrt(c_m/2) (|phi_0><chi_0| + |phi_1><chi_1|)
//   A[i1] = phase * sqrt(c_m/2) (|phi_0><chi_0| - |phi_1><chi_1|).
// phi_j are the eigenvectors of A[i0] A[i1]^dag; chi_j = W^dag phi_j with
// W = A[i0]/sqrt(c_m/2) form the correlation-space basis in which the
// measurement below simulates a projective measurement.
//
// The physical measurement is
//   M = { m_0 = (|b_i0> + phase |b_i1>)/sqrt(2),
//         m_1 = (|b_i0> - phase |b_i1>)/sqrt(2),  remaining |b_j> },
// whose first two effective operators are sqrt(c_m)|phi_j><chi_j|.
struct MeasuredForm {
    int idx0 = 0, idx1 = 1;
    cplx phase{1.0, 0.0};  // applied to A[idx1] to make A[i0] A[i1]^dag Hermitian
    Vec2 phi0, phi1;       // orthonormal output states
    Vec2 chi0, chi1;       // orthonormal measured CS basis
    double c_m = 0.0;

    // m_j in the correlation space: (chi_0 +/- chi_1)/sqrt(2).
    Vec2 cs_m(int j) const;
    // The physical-qudit basis M (rows), d = dim of the owning Kraus set.
    MeasurementBasis physical_basis(int d) const;
    // Reconstruction residual: how far A[idx0], phase*A[idx1] are from the
    // canonical form above.
    double reconstruction_residual(const KrausSet& k) const;
};

// Searches index pairs (i, i') with |c_i - c_i'| <= tol in lexicographic
// order and returns the first whose product A[i] A[i']^dag is, up to a phase,
// a Hermitian unitary with a symmetric +/- spectrum. nullopt when no pair
// qualifies.
std::optional<MeasuredForm> measured_form(const KrausSet& k, double tol = 1e-9);

struct ProjectiveProbabilities {
    double p0 = 0.0, p1 = 0.0;
    double residual = 0.0;  // total weight of the outcomes |2>..|d-1>
};

// The exact outcome distribution of M at the cursor site for a pure
// correlation-space state psi:
//   p_j = c_m f_{n-k}(|R>, |phi_j>) |<chi_j|psi>|^2 / f_{n-k+1}(|R>, |psi>).
ProjectiveProbabilities projective_probabilities(const MpsChain& chain, const Vec2& psi);

struct ConditionReport {
    bool holds = false;
    double f0 = 0.0, f1 = 0.0;
};

// Condition for faithful projective simulation at site k:
// f_{n-k}(|R>, |phi_0>) = f_{n-k}(|R>, |phi_1>).
ConditionReport check_condition(const MpsChain& chain, int k, double tol = 1e-9);

}  // namespace cswire
