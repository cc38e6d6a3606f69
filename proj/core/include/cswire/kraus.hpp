#pragma once

#include <string>
#include <vector>

#include "cswire/mat2.hpp"

namespace cswire {

// The d site matrices A[i] of an MPS, viewed as Kraus operators of the
// transfer channel  A(rho) = sum_i A[i] rho A[i]^dag.  Weights c_i are always
// recovered from traces, c_i = Tr(A[i]^dag A[i]) / 2, never taken from input
// files on faith.
struct KrausSet {
    std::vector<Mat2> ops;
    std::vector<double> weights;
    std::string label;

    static KrausSet make(std::vector<Mat2> ops, std::string label = "");

    int dim() const { return static_cast<int>(ops.size()); }

    Mat2 apply(const Mat2& rho) const;           // one channel application
    Mat2 apply_n(Mat2 rho, int times) const;     // repeated conjugation
};

struct CptpReport {
    bool trace_preserving = false;
    bool unital = false;
    double cond1_residual = 0.0;  // | sum_ij |alpha_ij|^2 - 1 |
    double cond2_residual = 0.0;  // max_l | sigma_l coefficient of sum A^dag A |
};

// Trace-preservation test in the Pauli-coefficient form: with
// A[i] = sum_j alpha_ij sigma_j, cond1 is the identity coefficient of
// sum_i A[i]^dag A[i] minus one, and cond2_l collects the sigma_l
// coefficients, whose epsilon term enters with a factor i.
CptpReport verify_cptp(const KrausSet& k, double tol = 1e-9);

struct StochasticUnitaryReport {
    bool ok = false;
    std::vector<double> weights;
    std::string violation;  // empty when ok
};

// Checks A[i]^dag A[i] = c_i I for every i and sum c_i = 1.
StochasticUnitaryReport verify_stochastic_unitary(const KrausSet& k, double tol = 1e-9);

// Throws validation_error naming the violated condition unless k is
// trace preserving (Cond1 + Cond2).
void require_cptp(const KrausSet& k, double tol = 1e-9);
void require_stochastic_unitary(const KrausSet& k, double tol = 1e-9);

}  // namespace cswire
