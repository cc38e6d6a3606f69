#include "cswire/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace cswire {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::FiniteDepolarizing: return "finite-depolarizing";
        case Verdict::AsymptoticallyNormalizable: return "asymptotically-normalizable";
        case Verdict::NonDecaying: return "non-decaying";
    }
    return "?";
}

std::optional<int> detect_finite_depolarizing(const KrausSet& k, int l_max, double tol) {
    require_cptp(k, tol);
    Mat3 block = transfer_matrix(k, tol).block();
    Mat3 power = Mat3::identity();
    for (int l = 1; l <= l_max; ++l) {
        power = power * block;
        if (op_norm(power) <= tol) return l;
    }
    return std::nullopt;
}

std::pair<double, double> r_pm(double u3_sq, double lambda_bar) {
    if (u3_sq < 0.0 || u3_sq > 1.0) throw validation_error("u3^2 must lie in [0, 1]");
    if (lambda_bar < 0.0 || lambda_bar >= 1.0) throw validation_error("lambda_bar must lie in [0, 1)");
    double onem = 1.0 - lambda_bar;
    double root = std::sqrt(onem * onem * u3_sq * u3_sq + 4.0 * lambda_bar * u3_sq);
    double rp = 0.5 * (u3_sq * onem * onem + 2.0 * lambda_bar + onem * root);
    double rm = 0.5 * (u3_sq * onem * onem + 2.0 * lambda_bar - onem * root);
    // |r| <= 1 holds exactly in real arithmetic; shave roundoff overshoot.
    if (rp > 1.0 && rp < 1.0 + 1e-12) rp = 1.0;
    return {rp, rm};
}

CorrelationLength correlation_length(const KrausSet& k, double tol) {
    require_cptp(k, tol);
    CorrelationLength out;
    out.lambda = spectral_radius(transfer_matrix(k, tol).block());
    if (out.lambda <= tol)
        out.xi = 0.0;
    else if (out.lambda >= 1.0 - tol)
        out.xi = std::numeric_limits<double>::infinity();
    else
        out.xi = -1.0 / std::log(out.lambda);
    return out;
}

namespace {

Vec2 bloch_to_state(const std::array<double, 3>& v) {
    Mat2 rho = 0.5 * (Mat2::identity() + v[0] * pauli(1) + v[1] * pauli(2) + v[2] * pauli(3));
    return principal_state(rho).first;
}

double wrap_angle(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
}

}  // namespace

ClassificationResult classify(const KrausSet& k, const ClassifyOptions& opts) {
    require_stochastic_unitary(k, opts.tol);
    const PauliTransfer t = transfer_matrix(k, opts.tol);
    const Mat3 block = t.block();

    ClassificationResult res;
    auto& ev = res.evidence;
    ev.block_norm = op_norm(block);
    ev.iterates_checked = opts.iterate_depth;
    ev.iterate_norm = op_norm(matrix_power(block, static_cast<unsigned long>(opts.iterate_depth)));

    const int d = k.dim();
    std::vector<Mat2> unitaries;  // A[i]/sqrt(c_i)
    for (int i = 0; i < d; ++i)
        unitaries.push_back((1.0 / std::sqrt(k.weights[static_cast<std::size_t>(i)])) *
                            k.ops[static_cast<std::size_t>(i)]);

    bool converges = true;
    if (ev.block_norm >= 1.0 - opts.tol) {
        // Norm-1 branch of the theorem: factor along the top singular pair.
        auto [v, sigma] = top_singular_vector(block);
        auto vp_arr = block.apply(v);
        double vp_norm = std::sqrt(vp_arr[0] * vp_arr[0] + vp_arr[1] * vp_arr[1] + vp_arr[2] * vp_arr[2]);
        for (auto& x : vp_arr) x /= vp_norm;
        Vec2 ket_v = bloch_to_state(v);
        Vec2 ket_vp = bloch_to_state(vp_arr);
        Vec2 ket_v_perp = ket_v.orthogonal();
        Vec2 ket_vp_perp = ket_vp.orthogonal();

        ev.betas.resize(static_cast<std::size_t>(d));
        double align = 0.0;
        for (int i = 0; i < d; ++i) {
            const Mat2& w = unitaries[static_cast<std::size_t>(i)];
            Vec2 image = w * ket_v;
            cplx overlap = dot(ket_vp, image);
            align = std::max(align, (image - overlap * ket_vp).norm());
            cplx perp_overlap = dot(ket_vp_perp, w * ket_v_perp);
            ev.betas[static_cast<std::size_t>(i)] = std::arg(perp_overlap * std::conj(overlap));
        }
        ev.alignment_residual = align;
        if (align > 1e-6)
            throw validation_error(
                "failed to factor the Kraus operators as U Z(beta_i): alignment residual " +
                std::to_string(align));

        double p = 0.0, q = 0.0;
        for (int i = 0; i < d; ++i) {
            p += k.weights[static_cast<std::size_t>(i)] * std::cos(ev.betas[static_cast<std::size_t>(i)]);
            q += k.weights[static_cast<std::size_t>(i)] * std::sin(ev.betas[static_cast<std::size_t>(i)]);
        }
        ev.lambda_bar = p * p + q * q;

        // Basis rotation G|v> = |0>, G|v_perp> = |1>.
        Mat2 g = Mat2::outer(Vec2{1, 0}, ket_v) + Mat2::outer(Vec2{0, 1}, ket_v_perp);
        Mat2 u_hat = (g * unitaries[0] * g.adjoint()) * rot_z(ev.betas[0]).adjoint();
        Mat3 u_rot = bloch_rotation(u_hat);
        ev.u3_raw = u_rot.at(2, 2);

        bool non_decaying = false;
        if (ev.lambda_bar >= 1.0 - opts.tol) {
            // All beta_i coincide (after the proof's merge of equal phases)
            // exactly when the operators are mutually proportional; the
            // channel is then conjugation by one unitary and never
            // depolarizes. Rotate to that unitary's eigenbasis.
            bool proportional = true;
            for (int i = 1; i < d; ++i)
                proportional = proportional &&
                               distance_up_to_phase(unitaries[static_cast<std::size_t>(i)],
                                                    unitaries[0]).first <= 1e-7;
            if (proportional) {
                ev.r_plus = ev.r_minus = 1.0;
                auto eig = eig_normal(unitaries[0], 1e-7);
                g = Mat2::outer(Vec2{1, 0}, eig[0].vector) + Mat2::outer(Vec2{0, 1}, eig[1].vector);
                ev.u3_raw = 1.0;
                non_decaying = true;
            }
            // Otherwise the mixture is too close to degenerate to certify
            // either way; fall through as convergent and let the iterate
            // evidence mark the result marginal.
        } else {
            std::tie(ev.r_plus, ev.r_minus) = r_pm(ev.u3_raw * ev.u3_raw, ev.lambda_bar);
            non_decaying = std::max(std::abs(ev.r_plus), std::abs(ev.r_minus)) >= 1.0 - opts.tol;
        }

        if (non_decaying) {
            if (std::abs(std::abs(ev.u3_raw) - 1.0) > 1e-6)
                throw validation_error("non-decaying channel with |U~_33| != 1: residual " +
                                       std::to_string(std::abs(std::abs(ev.u3_raw) - 1.0)));
            int u3 = ev.u3_raw > 0 ? 1 : -1;
            res.u3 = u3;
            res.basis_rotation = g;
            res.phases.resize(static_cast<std::size_t>(d));
            double recon = 0.0;
            Mat2 xa = u3 == 1 ? Mat2::identity() : pauli(1);
            for (int i = 0; i < d; ++i) {
                Mat2 m = g * unitaries[static_cast<std::size_t>(i)] * g.adjoint();
                double phi = u3 == 1 ? std::arg(m.e[3] * std::conj(m.e[0]))
                                     : std::arg(m.e[1] * std::conj(m.e[2]));
                phi = wrap_angle(phi);
                res.phases[static_cast<std::size_t>(i)] = phi;
                recon = std::max(recon, distance_up_to_phase(m, xa * rot_z(phi)).first);
            }
            ev.reconstruction_residual = recon;
            if (recon > 1e-6)
                throw validation_error("X^a Z(phi) reconstruction failed: residual " +
                                       std::to_string(recon));
            converges = false;
        }
    }

    if (!converges) {
        res.verdict = Verdict::NonDecaying;
    } else {
        res.decay_rate = spectral_radius(block);
        res.verdict = Verdict::AsymptoticallyNormalizable;
        if (opts.l_max > 0) {
            Mat3 power = Mat3::identity();
            for (int l = 1; l <= opts.l_max; ++l) {
                power = power * block;
                if (op_norm(power) <= opts.tol) {
                    res.verdict = Verdict::FiniteDepolarizing;
                    res.finite_l = l;
                    break;
                }
            }
        }
    }
    // The verdict is decided by the theorem; the iterate is independent
    // numerical evidence. Flag instances the iterate cannot confirm.
    ev.marginal = ev.iterate_norm > opts.marginal_window &&
                  ev.iterate_norm < 1.0 - opts.marginal_window;
    return res;
}

}  // namespace cswire
