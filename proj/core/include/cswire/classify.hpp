#pragma once

#include <optional>
#include <vector>

#include "cswire/transfer.hpp"

namespace cswire {

enum class Verdict {
    FiniteDepolarizing,          // A^l is completely depolarizing for a finite l
    AsymptoticallyNormalizable,  // A^l -> E only as l -> infinity
    NonDecaying,                 // A^l never converges to E
};

const char* verdict_name(Verdict v);

struct ClassifyOptions {
    int l_max = 64;           // finite-depolarizing search depth; 0 disables the detector
    int iterate_depth = 100;  // evidence: ||A~^depth|| is reported alongside the verdict
    double tol = 1e-9;
    double marginal_window = 1e-6;  // iterate band treated as numerically undecidable
};

struct ClassificationEvidence {
    double block_norm = 0.0;
    double lambda_bar = 0.0;     // p^2 + q^2 from the Z-phase mixture
    double r_plus = 0.0, r_minus = 0.0;
    std::vector<double> betas;   // relative phases of A[i]/sqrt(c_i) = U Z(beta_i)
    double u3_raw = 0.0;         // U~_33 before rounding to +/-1
    int iterates_checked = 0;
    double iterate_norm = 0.0;   // ||A~^iterates_checked||_inf
    double alignment_residual = 0.0;       // max_i || (A[i]/sqrt(c_i))|v> - phase|v'> ||
    double reconstruction_residual = 0.0;  // NonDecaying only
    bool marginal = false;
};

struct ClassificationResult {
    Verdict verdict = Verdict::AsymptoticallyNormalizable;
    std::optional<int> finite_l;
    std::optional<double> decay_rate;     // largest |eigenvalue| of A~; absent for NonDecaying
    std::optional<int> u3;                // +/-1, NonDecaying only
    std::vector<double> phases;           // phi_i of X^{(1-u3)/2} Z(phi_i), NonDecaying only
    std::optional<Mat2> basis_rotation;   // G with G|v> = |0>, NonDecaying only
    ClassificationEvidence evidence;
};

// Smallest l <= l_max with ||A~^l||_inf <= tol, i.e. A^l rho = (I/2) Tr rho.
std::optional<int> detect_finite_depolarizing(const KrausSet& k, int l_max, double tol = 1e-9);

// Constructive form of the convergence theorem for stochastic-unitary maps:
//   1. ||A~||_inf < 1       -> converges (asymptotically normalizable).
//   2. ||A~||_inf = 1       -> factor A[i]/sqrt(c_i) = U Z(beta_i) along the
//      top singular pair, form lambda_bar = p^2 + q^2 and u3 = U~_33, and
//      evaluate r_+- ; max|r_+-| = 1 exactly when the Kraus operators are
//      X^{(1-u3)/2} Z(phi_i) in the rotated basis (non-decaying), otherwise
//      the map still converges.
// The finite-depolarizing detector runs first when opts.l_max > 0.
ClassificationResult classify(const KrausSet& k, const ClassifyOptions& opts = {});

// Eigenvalue pair of the theorem's Hermitian comparison matrix:
// r_+- = [u3^2 (1-L)^2 + 2L +- (1-L) sqrt((1-L)^2 u3^4 + 4 L u3^2)] / 2.
std::pair<double, double> r_pm(double u3_sq, double lambda_bar);

struct CorrelationLength {
    double lambda = 0.0;  // spectral radius of A~
    double xi = 0.0;      // -1/ln(lambda); 0 when nilpotent, +inf when lambda = 1
};

CorrelationLength correlation_length(const KrausSet& k, double tol = 1e-9);

}  // namespace cswire
