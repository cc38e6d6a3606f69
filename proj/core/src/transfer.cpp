#include "cswire/transfer.hpp"

#include <cmath>

namespace cswire {

std::array<cplx, 4> pauli_decompose(const Mat2& m) {
    return {(m.e[0] + m.e[3]) / 2.0,
            (m.e[1] + m.e[2]) / 2.0,
            (cplx(0, 1) * (m.e[1] - m.e[2])) / 2.0,
            (m.e[0] - m.e[3]) / 2.0};
}

Mat2 pauli_recompose(const std::array<cplx, 4>& c) {
    Mat2 m;
    for (int j = 0; j < 4; ++j) m += c[j] * pauli(j);
    return m;
}

PauliTransfer transfer_matrix(const KrausSet& k, double tol) {
    require_cptp(k, tol);
    PauliTransfer t;
    for (int col = 0; col < 4; ++col) {
        Mat2 image = k.apply(pauli(col));
        auto coeff = pauli_decompose(image);
        for (int row = 0; row < 4; ++row) {
            // Hermiticity preservation makes these real; anything else is roundoff.
            t.m.at(row, col) = coeff[row].real();
        }
    }
    return t;
}

double block_norm(const PauliTransfer& t) { return op_norm(t.block()); }

Mat3 bloch_rotation(const Mat2& u) {
    Mat3 r;
    for (int col = 0; col < 3; ++col) {
        auto coeff = pauli_decompose(u * pauli(col + 1) * u.adjoint());
        for (int row = 0; row < 3; ++row) r.at(row, col) = coeff[row + 1].real();
    }
    return r;
}

}  // namespace cswire
