#pragma once

#include <memory>
#include <vector>

#include "cswire/kraus.hpp"
#include "cswire/transfer.hpp"

namespace cswire {

// |v><v|
inline Mat2 density(const Vec2& v) { return Mat2::outer(v, v); }

// Pauli coefficients of a Hermitian operator (imaginary parts are roundoff
// and dropped).
std::array<double, 4> density_coeffs(const Mat2& rho);
// (<R|sigma_0|R>, ..., <R|sigma_3|R>)
std::array<double, 4> boundary_coeffs(const Vec2& r);

// f_m(|R>, psi) = <R| A^(m) (psi) |R>, computed through Pauli-transfer powers.
double normalization_factor(const PauliTransfer& t, const Vec2& right, const Mat2& psi, int m);
double normalization_factor(const KrausSet& k, const Vec2& right, const Mat2& psi, int m);

// A finite chain: site count, site matrices, boundary vectors, and the state
// of the correlation space after the measurements done so far. A chain is a
// value; measurement operations return updated copies. The Pauli transfer
// matrix is built once in make_chain and shared by copies.
struct MpsChain {
    int n = 0;
    KrausSet kraus;
    Vec2 left, right;
    Mat2 cs_state;             // unit-trace Hermitian PSD
    int cursor = 1;            // next unmeasured site, 1-based; n+1 when exhausted
    bool unitary_history = true;

    int remaining() const { return n - cursor + 1; }
    const PauliTransfer& transfer() const;
    // Principal vector of cs_state; throws if cs_state is not rank-1 within tol.
    Vec2 cs_vector(double tol = 1e-9) const;

  private:
    friend MpsChain make_chain(const KrausSet&, const Vec2&, const Vec2&, int, double);
    std::shared_ptr<const PauliTransfer> transfer_;
};

// Validates the Kraus set (CPTP), unit boundary norms and n >= 1.
MpsChain make_chain(const KrausSet& k, const Vec2& left, const Vec2& right, int n,
                    double tol = 1e-9);

// Amplitudes of the unmeasured part of the chain over all d^remaining basis
// strings, normalized. Site `cursor` is the least significant digit of the
// index. Requires a pure correlation-space state and
// d^remaining <= 10^7 (guard).
std::vector<cplx> full_state_vector(const MpsChain& chain, double tol = 1e-9);

}  // namespace cswire
