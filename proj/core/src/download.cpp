#include "cswire/download.hpp"

#include <cmath>

namespace cswire {

namespace {

// The coherent pair of correlation-space branches tagged by the orthogonal
// qudit-k markers |m_0>, |m_1>. Vectors are unnormalized; their norms carry
// the branch weights.
struct BranchPair {
    Vec2 u0, u1;
    int site = 0;  // next unmeasured site
};

double branch_weight(const PauliTransfer& t, const Vec2& right, const BranchPair& b, int n) {
    int rest = n - b.site + 1;
    return normalization_factor(t, right, Mat2::outer(b.u0, b.u0), rest) +
           normalization_factor(t, right, Mat2::outer(b.u1, b.u1), rest);
}

MeasurementRecord make_record(int site, int outcome, double probability, const EffectiveOp& eff) {
    MeasurementRecord rec;
    rec.site = site;
    rec.outcome = outcome;
    rec.probability = probability;
    rec.effective_op = eff.op;
    rec.unitary_branch = eff.unitary_branch;
    rec.branch_weight = eff.branch_weight;
    return rec;
}

}  // namespace

DownloadTrace download(const MpsChain& chain, std::uint64_t seed, const DownloadOptions& opts) {
    auto form = measured_form(chain.kraus);
    if (!form) throw validation_error("no measured form found");
    const int d = chain.kraus.dim();
    const PauliTransfer& t = chain.transfer();
    const MeasurementBasis mbasis = form->physical_basis(d);
    std::vector<EffectiveOp> mops;
    for (int a = 0; a < d; ++a) mops.push_back(effective_operator(chain.kraus, mbasis.rows[static_cast<std::size_t>(a)]));
    Rng rng(seed);

    DownloadTrace trace;
    MpsChain state = chain;
    trace.reference = state.cs_vector();

    // Stage 1: project the cursor site onto span{m_0, m_1}. A failed
    // projection is resolved in the residual basis directions (a unitary kick
    // for stochastic-unitary resources) and retried on the next site, so the
    // reference state tracks those kicks.
    while (true) {
        if (state.cursor >= state.n)
            throw validation_error("chain exhausted before the projection succeeded");
        if (trace.attempts >= opts.max_attempts)
            throw validation_error("projection did not succeed within the attempt cap");
        trace.attempts += 1;
        auto probs = site_probabilities(state, mbasis);
        double p_succ = probs[0] + probs[1];
        if (rng.uniform() < p_succ) break;
        std::vector<double> residual(probs.begin() + 2, probs.end());
        int j = 2 + rng.pick(residual);
        auto [rec, next] = apply_outcome(state, mbasis, j);
        trace.pre_steps.push_back(rec);
        state = next;
        trace.reference = state.cs_vector();
    }
    trace.projection_site = state.cursor;

    // Post-projection branches: u_j = sqrt(c_m) <chi_j|psi> |phi_j>.
    const Vec2 psi = trace.reference;
    const double amp = std::sqrt(form->c_m);
    BranchPair branches{amp * dot(form->chi0, psi) * form->phi0,
                        amp * dot(form->chi1, psi) * form->phi1, state.cursor + 1};

    // Stage 2: the correlation-space rotation |phi_j> -> |m_j>.
    const Vec2 m0 = form->cs_m(0), m1 = form->cs_m(1);
    bool need_rotation;
    {
        cplx q0 = dot(m0, form->phi0), q1 = dot(m1, form->phi1);
        need_rotation = std::abs(std::abs(q0) - 1.0) > 1e-9 ||
                        std::abs(std::abs(q1) - 1.0) > 1e-9 || std::abs(q0 - q1) > 1e-9;
    }
    if (opts.rotation == RotationMode::Auto && need_rotation) {
        if (opts.rotation_program.empty())
            throw validation_error(
                "phi_j differs from m_j and no rotation program was supplied; "
                "pass one or run with the rotation skipped");
        Mat2 acc = Mat2::identity();
        for (const auto& step : opts.rotation_program) {
            if (step.site != branches.site)
                throw validation_error("rotation program sites must be consecutive after the projection");
            if (step.site > state.n) throw validation_error("rotation program exceeds the chain");
            if (step.basis.dim() != d) throw validation_error("rotation basis dimension mismatch");
            double denom = branch_weight(t, state.right, branches, state.n);
            std::vector<double> probs(static_cast<std::size_t>(d));
            std::vector<EffectiveOp> effs;
            for (int a = 0; a < d; ++a) {
                effs.push_back(effective_operator(state.kraus, step.basis.rows[static_cast<std::size_t>(a)]));
                BranchPair moved{effs.back().op * branches.u0, effs.back().op * branches.u1,
                                 branches.site + 1};
                probs[static_cast<std::size_t>(a)] = branch_weight(t, state.right, moved, state.n) / denom;
            }
            int a = rng.pick(probs);
            const auto& eff = effs[static_cast<std::size_t>(a)];
            branches.u0 = eff.op * branches.u0;
            branches.u1 = eff.op * branches.u1;
            branches.site += 1;
            acc = eff.op * acc;
            trace.rotation_steps.push_back(make_record(step.site, a, probs[static_cast<std::size_t>(a)], eff));
        }
        // Validate the accumulated effect before trusting it: it must be
        // proportional to a unitary mapping phi_j onto m_j with one common
        // scalar. The paper gives no rotation compiler, so a program that
        // landed on a wrong branch is an error, not a silent miss.
        trace.c_u = (acc.adjoint() * acc).trace().real() / 2.0;
        if (!acc.proportional_to_unitary(1e-7)) {
            throw validation_error("rotation program effect is not proportional to a unitary on this branch");
        }
        cplx z0 = dot(m0, acc * form->phi0), z1 = dot(m1, acc * form->phi1);
        double scale = std::sqrt(trace.c_u);
        double resid = std::max(std::abs(std::abs(z0) - scale), std::abs(std::abs(z1) - scale));
        resid = std::max(resid, static_cast<double>(std::abs(z0 - z1)));
        if (resid > 1e-7 * std::max(1.0, scale))
            throw validation_error(
                "rotation program did not implement |phi_j> -> |m_j> on this branch (residual " +
                std::to_string(resid) + ")");
    }

    // Stage 3: the measured-form readout at k'. Residual outcomes (d > 2) hit
    // both branches with the same operator and the readout moves one site on.
    int retries = 0;
    while (true) {
        if (branches.site > state.n)
            throw validation_error("chain exhausted before the readout succeeded");
        if (retries >= opts.max_attempts)
            throw validation_error("readout did not succeed within the attempt cap");
        double denom = branch_weight(t, state.right, branches, state.n);
        std::vector<double> probs(static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) {
            BranchPair moved{mops[static_cast<std::size_t>(a)].op * branches.u0,
                             mops[static_cast<std::size_t>(a)].op * branches.u1, branches.site + 1};
            probs[static_cast<std::size_t>(a)] = branch_weight(t, state.right, moved, state.n) / denom;
        }
        int a = rng.pick(probs);
        if (a >= 2) {
            retries += 1;
            const auto& eff = mops[static_cast<std::size_t>(a)];
            trace.pre_steps.push_back(make_record(branches.site, a, probs[static_cast<std::size_t>(a)], eff));
            branches.u0 = eff.op * branches.u0;
            branches.u1 = eff.op * branches.u1;
            branches.site += 1;
            continue;
        }
        trace.readout_site = branches.site;
        trace.final_outcome = a;
        const Vec2& chi_l = a == 0 ? form->chi0 : form->chi1;
        // Branch-j coefficient after outcome m_l: comp_j = sqrt(c_m) <chi_l|u_j>;
        // the paper's target is comp_j = zeta (-1)^{jl} <chi_j|psi>.
        cplx comp0 = amp * dot(chi_l, branches.u0);
        cplx comp1 = amp * dot(chi_l, branches.u1);
        double norm = std::sqrt(std::norm(comp0) + std::norm(comp1));
        if (norm < 1e-300) throw validation_error("downloaded state has zero norm");
        comp0 /= norm;
        comp1 /= norm;
        // Qudit-k amplitudes over {b_idx0, b_idx1}: |m_j> = (b_0 + (-1)^j conj(phase) b_1)/sqrt(2).
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        trace.downloaded = {inv_sqrt2 * (comp0 + comp1),
                            inv_sqrt2 * std::conj(form->phase) * (comp0 - comp1)};
        // Undoing H Z^l in the m-component picture leaves (comp0, (-1)^l comp1)
        // in the chi basis.
        double sign = a == 0 ? 1.0 : -1.0;
        trace.corrected_cs = comp0 * form->chi0 + (sign * comp1) * form->chi1;
        trace.fidelity = verify_download(trace, trace.reference);
        // kappa_j = (-1)^{jl} comp_j / <chi_j|psi> should not depend on j.
        cplx u0 = dot(form->chi0, psi), u1 = dot(form->chi1, psi);
        std::vector<cplx> kappa;
        if (std::abs(u0) > 1e-9) kappa.push_back(comp0 / u0);
        if (std::abs(u1) > 1e-9) kappa.push_back(sign * comp1 / u1);
        if (kappa.size() < 2) {
            trace.j_residual = 0.0;
        } else {
            cplx mean = (kappa[0] + kappa[1]) / 2.0;
            double dev = std::max(std::abs(kappa[0] - mean), std::abs(kappa[1] - mean));
            trace.j_residual = std::abs(mean) > 1e-300 ? dev / std::abs(mean) : 1.0;
        }
        return trace;
    }
}

double verify_download(const DownloadTrace& trace, const Vec2& psi) {
    double denom = psi.norm_sq() * trace.corrected_cs.norm_sq();
    if (denom < 1e-300) return 0.0;
    return std::norm(dot(psi, trace.corrected_cs)) / denom;
}

}  // namespace cswire
