#pragma once

#include "cswire/correlation.hpp"
#include "cswire/measurement.hpp"

namespace cswire {

// Brute-force checks against the full state vector. Outcome strings are
// indexed with the first measured site as the least significant digit,
// matching full_state_vector.

// Born-rule joint distribution over all outcome strings when site cursor+i is
// measured in per_site[i].
std::vector<double> oracle_joint_distribution(const MpsChain& chain,
                                              const std::vector<MeasurementBasis>& per_site);

// Same distribution assembled from chained transfer-formalism conditionals
// (every conditional contracts the unmeasured suffix through channel powers).
std::vector<double> transfer_joint_distribution(const MpsChain& chain,
                                                const std::vector<MeasurementBasis>& per_site);

double oracle_expectation(const MpsChain& chain, const SiteObservable& o);
double oracle_two_point_connected(const MpsChain& chain, const SiteObservable& oa,
                                  const SiteObservable& ob);

}  // namespace cswire
