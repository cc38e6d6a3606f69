#pragma once

#include <array>

#include "cswire/kraus.hpp"
#include "cswire/real_mat.hpp"

namespace cswire {

// Coefficients of M in the Pauli basis: M = sum_j coeff[j] sigma_j,
// coeff[j] = Tr(sigma_j M) / 2.
std::array<cplx, 4> pauli_decompose(const Mat2& m);
Mat2 pauli_recompose(const std::array<cplx, 4>& coeff);

// The 4x4 real representation of a channel in the Pauli basis. For a
// trace-preserving unital channel the first row and column are (1,0,0,0) and
// the lower-right 3x3 block A~ is real with operator norm <= 1; that block
// governs normalizability and correlation decay.
struct PauliTransfer {
    Mat4 m;

    Mat3 block() const {
        Mat3 b;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) b.at(r, c) = m.at(r + 1, c + 1);
        return b;
    }

    // Action on the Pauli coefficient vector (v0, v1, v2, v3) of a Hermitian
    // operator rho = sum v_j sigma_j / ... (same convention as pauli_decompose).
    std::array<double, 4> apply(const std::array<double, 4>& v) const { return m.apply(v); }
};

// Builds the Pauli-basis matrix of rho -> sum_i A[i] rho A[i]^dag. Rejects
// Kraus sets that are not trace preserving (the violated condition is named).
PauliTransfer transfer_matrix(const KrausSet& k, double tol = 1e-9);

// ||A~||_inf: the largest singular value of the 3x3 block.
double block_norm(const PauliTransfer& t);

// Bloch-vector rotation of the conjugation rho -> u rho u^dag (u unitary).
Mat3 bloch_rotation(const Mat2& u);

}  // namespace cswire
