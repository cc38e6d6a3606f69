#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cswire/chain.hpp"
#include "cswire/rng.hpp"

namespace cswire {

// d orthonormal vectors |alpha_j> = sum_i alpha_ji |i> over the physical
// qudit; rows[j][i] = alpha_ji.
struct MeasurementBasis {
    std::vector<std::vector<cplx>> rows;

    int dim() const { return static_cast<int>(rows.size()); }

    static MeasurementBasis computational(int d);
    static MeasurementBasis from_rows(std::vector<std::vector<cplx>> rows, double tol = 1e-9);
};

struct EffectiveOp {
    Mat2 op;  // A[alpha_j] = sum_i conj(alpha_ji) A[i]
    bool unitary_branch = false;
    std::optional<double> branch_weight;  // a_j, defined only on unitary branches
};

EffectiveOp effective_operator(const KrausSet& k, std::span<const cplx> basis_vector,
                               double tol = 1e-9);

struct MeasurementRecord {
    int site = 0;
    int outcome = 0;
    double probability = 0.0;
    Mat2 effective_op;
    bool unitary_branch = false;
    std::optional<double> branch_weight;
};

// Exact outcome distribution at the cursor site: p_j is the Born weight of
// branch j with the remaining chain (the environment) contracted through
// transfer powers, not the bare branch weight a_j.
std::vector<double> site_probabilities(const MpsChain& chain, const MeasurementBasis& basis);

// Samples one outcome (CDF inversion in ascending outcome order) and returns
// the record together with the updated chain.
std::pair<MeasurementRecord, MpsChain> measure_site(const MpsChain& chain,
                                                    const MeasurementBasis& basis, Rng& rng);

// Deterministic variant: applies a fixed outcome.
std::pair<MeasurementRecord, MpsChain> apply_outcome(const MpsChain& chain,
                                                     const MeasurementBasis& basis, int outcome);

struct ProgramStep {
    int site = 0;
    MeasurementBasis basis;
};

using Program = std::vector<ProgramStep>;

struct Trace {
    std::vector<MeasurementRecord> records;
    Mat2 final_cs;
};

// Runs the program once per shot with per-shot derived rng streams. Sites
// must be strictly increasing and >= the chain cursor; skipped sites are
// traced out (their marginal is the channel application).
std::vector<Trace> run_program(const MpsChain& chain, const Program& program, std::uint64_t seed,
                               int shots);

}  // namespace cswire
