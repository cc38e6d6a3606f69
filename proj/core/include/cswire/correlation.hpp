#pragma once

#include <optional>
#include <vector>

#include "cswire/chain.hpp"

namespace cswire {

// A d x d Hermitian observable attached to one site of the chain.
struct SiteObservable {
    std::vector<cplx> entries;  // row-major d x d
    int d = 0;
    int site = 0;

    static SiteObservable make(std::vector<cplx> entries, int d, int site, double tol = 1e-9);
    cplx at(int r, int c) const { return entries[static_cast<std::size_t>(d * r + c)]; }
    double op_norm_bound() const;  // largest |eigenvalue| via Gershgorin-free power iteration
};

// Superoperator O(rho) = sum_ij <i|O|j> A[j] rho A[i]^dag.
Mat2 observable_superop(const KrausSet& k, const SiteObservable& o, const Mat2& rho);

// <O>_Psi through transfer contraction, normalized by f_n.
double expectation(const MpsChain& chain, const SiteObservable& o);

// Connected correlator <O^a_k O^b_{k+r}> - <O^a_k><O^b_{k+r}>; requires
// oa.site < ob.site <= n.
double two_point(const MpsChain& chain, const SiteObservable& oa, const SiteObservable& ob);

struct DecayBound {
    double total = 0.0;
    // The assembled pieces, for auditing the inequality chain.
    double alpha_bound = 0.0;      // |alpha(O^a)| <= d^2
    double bracket_bound = 0.0;    // |<R| A^{n-k-r} O^b I |R>| <= d^2
    double c2_bound = 0.0;         // (3/2) d^4 ||A~^{r-1}||
    double c3_bound = 0.0;         // (3/2) d^2 ||A~^{n-k}||
    double c5_bound = 0.0;         // (d^2/2) ||A~^{r-1}||
    double fn_deviation = 0.0;     // |f_n - 1/2| <= (1/2) ||A~^n||
    double f_n = 0.0;              // actual normalization factor
};

// Certified upper bound on |connected two-point correlator| assembled from
// the transfer-block norms; requires ||Oa|| <= 1 and ||Ob|| <= 1.
DecayBound decay_bound(const MpsChain& chain, const SiteObservable& oa, const SiteObservable& ob);

struct CorrelationSeries {
    std::vector<int> separations;
    std::vector<double> connected;
    std::vector<double> bound;
    std::optional<double> fitted_rate;  // least-squares slope of -ln|connected| vs r
};

// Sweeps r = 1..r_max at fixed left site k; the log fit skips entries below
// 1e-13 and needs at least 3 usable points.
CorrelationSeries correlation_series(const MpsChain& chain, const std::vector<cplx>& oa_matrix,
                                     const std::vector<cplx>& ob_matrix, int k, int r_max);

// CSV emission: header "r,connected,bound,abs_connected", 17 significant digits.
std::string series_to_csv(const CorrelationSeries& series);

}  // namespace cswire
