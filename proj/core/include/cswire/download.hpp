#pragma once

#include <array>

#include "cswire/measured_form.hpp"

namespace cswire {

// How the correlation-space rotation |phi_j> -> |m_j> between the projection
// and the readout is realized. `Auto` uses the identity when phi_j already
// equals m_j up to a common phase (the cluster case) and otherwise requires a
// caller-supplied measurement program, validated after the run. `Skip` omits
// the rotation entirely; that is the negative-control mode for resources
// whose reachable rotations cannot map phi_j to m_j.
enum class RotationMode { Auto, Skip };

struct DownloadOptions {
    RotationMode rotation = RotationMode::Auto;
    Program rotation_program;  // used when Auto needs it; sites are absolute
    int max_attempts = 64;
};

struct DownloadTrace {
    int attempts = 0;                              // projections until success
    std::vector<MeasurementRecord> pre_steps;      // failed-projection residual outcomes
    std::vector<MeasurementRecord> rotation_steps;
    int projection_site = 0;                       // k
    int readout_site = 0;                          // k'
    int final_outcome = 0;                         // l of m_l
    std::array<cplx, 2> downloaded;                // qudit-k amplitudes over {b_idx0, b_idx1}
    Vec2 corrected_cs;                             // downloaded state after undoing H Z^l
    Vec2 reference;                                // CS state the protocol tried to download
    double c_u = 1.0;                              // accumulated rotation weight
    double fidelity = 0.0;                         // |<reference|corrected_cs>|^2
    double j_residual = 0.0;                       // branch-coefficient imbalance
};

// Runs the protocol on the chain's current pure CS state: repeat-until-success
// projection of the cursor site onto span{m_0, m_1}, the CS rotation, then the
// measured-form readout at the following site. Deterministic given the seed.
DownloadTrace download(const MpsChain& chain, std::uint64_t seed, const DownloadOptions& opts = {});

// |<psi|corrected downloaded state>|^2.
double verify_download(const DownloadTrace& trace, const Vec2& psi);

}  // namespace cswire
