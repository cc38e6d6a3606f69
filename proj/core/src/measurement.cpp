#include "cswire/measurement.hpp"

#include <cmath>

namespace cswire {

MeasurementBasis MeasurementBasis::computational(int d) {
    std::vector<std::vector<cplx>> rows(d, std::vector<cplx>(d, cplx(0, 0)));
    for (int j = 0; j < d; ++j) rows[j][j] = 1.0;
    return MeasurementBasis{std::move(rows)};
}

MeasurementBasis MeasurementBasis::from_rows(std::vector<std::vector<cplx>> rows, double tol) {
    const auto d = rows.size();
    if (d == 0) throw validation_error("empty measurement basis");
    for (const auto& row : rows) {
        if (row.size() != d) throw validation_error("measurement basis rows must be length d");
        for (const auto& z : row)
            if (!is_finite(z)) throw validation_error("non-finite basis entry");
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            cplx ip = 0;
            for (std::size_t kk = 0; kk < d; ++kk) ip += std::conj(rows[i][kk]) * rows[j][kk];
            double want = i == j ? 1.0 : 0.0;
            if (std::abs(ip - want) > tol)
                throw validation_error("measurement basis is not orthonormal");
        }
    return MeasurementBasis{std::move(rows)};
}

EffectiveOp effective_operator(const KrausSet& k, std::span<const cplx> basis_vector, double tol) {
    if (static_cast<int>(basis_vector.size()) != k.dim())
        throw validation_error("basis vector length does not match the physical dimension");
    double norm_sq = 0;
    for (const auto& z : basis_vector) norm_sq += std::norm(z);
    if (std::abs(norm_sq - 1.0) > tol) throw validation_error("basis vector is not normalized");
    EffectiveOp out;
    for (int i = 0; i < k.dim(); ++i)
        out.op += std::conj(basis_vector[static_cast<std::size_t>(i)]) * k.ops[static_cast<std::size_t>(i)];
    if (auto c = out.op.proportional_to_unitary(tol)) {
        out.unitary_branch = true;
        out.branch_weight = *c;
    }
    return out;
}

std::vector<double> site_probabilities(const MpsChain& chain, const MeasurementBasis& basis) {
    if (chain.cursor > chain.n) throw validation_error("chain cursor is exhausted");
    if (basis.dim() != chain.kraus.dim())
        throw validation_error("measurement basis dimension does not match the chain");
    const PauliTransfer& t = chain.transfer();
    const int rest = chain.n - chain.cursor;
    double denom = normalization_factor(t, chain.right, chain.cs_state, rest + 1);
    std::vector<double> p(static_cast<std::size_t>(basis.dim()));
    for (int j = 0; j < basis.dim(); ++j) {
        EffectiveOp eff = effective_operator(chain.kraus, basis.rows[static_cast<std::size_t>(j)]);
        Mat2 branch = eff.op * chain.cs_state * eff.op.adjoint();
        p[static_cast<std::size_t>(j)] = normalization_factor(t, chain.right, branch, rest) / denom;
    }
    return p;
}

static std::pair<MeasurementRecord, MpsChain> apply_known(const MpsChain& chain,
                                                          const MeasurementBasis& basis,
                                                          int outcome, double probability) {
    EffectiveOp eff = effective_operator(chain.kraus, basis.rows[static_cast<std::size_t>(outcome)]);
    Mat2 branch = eff.op * chain.cs_state * eff.op.adjoint();
    double tr = branch.trace().real();
    if (tr <= 1e-300)
        throw validation_error("outcome has zero probability; post-measurement state undefined");
    MpsChain next = chain;
    next.cs_state = (1.0 / tr) * branch;
    next.cursor = chain.cursor + 1;
    next.unitary_history = chain.unitary_history && eff.unitary_branch;
    MeasurementRecord rec;
    rec.site = chain.cursor;
    rec.outcome = outcome;
    rec.probability = probability;
    rec.effective_op = eff.op;
    rec.unitary_branch = eff.unitary_branch;
    rec.branch_weight = eff.branch_weight;
    return {rec, next};
}

std::pair<MeasurementRecord, MpsChain> apply_outcome(const MpsChain& chain,
                                                     const MeasurementBasis& basis, int outcome) {
    if (outcome < 0 || outcome >= basis.dim()) throw validation_error("outcome index out of range");
    auto probs = site_probabilities(chain, basis);
    return apply_known(chain, basis, outcome, probs[static_cast<std::size_t>(outcome)]);
}

std::pair<MeasurementRecord, MpsChain> measure_site(const MpsChain& chain,
                                                    const MeasurementBasis& basis, Rng& rng) {
    auto probs = site_probabilities(chain, basis);
    int outcome = rng.pick(probs);
    return apply_known(chain, basis, outcome, probs[static_cast<std::size_t>(outcome)]);
}

std::vector<Trace> run_program(const MpsChain& chain, const Program& program, std::uint64_t seed,
                               int shots) {
    if (shots < 1) throw validation_error("shots must be >= 1");
    int prev = chain.cursor - 1;
    for (const auto& step : program) {
        if (step.site <= prev)
            throw validation_error("program sites must be strictly increasing from the cursor");
        if (step.site > chain.n) throw validation_error("program site exceeds the chain length");
        prev = step.site;
    }
    std::vector<Trace> traces;
    traces.reserve(static_cast<std::size_t>(shots));
    for (int shot = 0; shot < shots; ++shot) {
        Rng rng = Rng::for_shot(seed, static_cast<std::uint64_t>(shot));
        MpsChain state = chain;
        Trace trace;
        for (const auto& step : program) {
            while (state.cursor < step.site) {  // skipped site: trace it out
                state.cs_state = state.kraus.apply(state.cs_state);
                state.cursor += 1;
                state.unitary_history = false;
            }
            auto [rec, next] = measure_site(state, step.basis, rng);
            trace.records.push_back(rec);
            state = next;
        }
        trace.final_cs = state.cs_state;
        traces.push_back(std::move(trace));
    }
    return traces;
}

}  // namespace cswire
