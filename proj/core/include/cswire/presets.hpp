#pragma once

#include <map>
#include <string>
#include <vector>

#include "cswire/chain.hpp"

namespace cswire {

// Canonical-class site matrices:
//   A[0] = sqrt(c_m/2) exp(i theta0 Y)
//   A[1] = sqrt(c_m/2) exp(i theta0 Y) Z
//   A[j] = sqrt(c_j)   exp(i theta_j Y) B_j   for j >= 2, B_j in {I, X, Y, Z}
// with c_m + sum_j c_j = 1.
struct CanonicalClassParams {
    struct Extra {
        double theta = 0.0;
        int pauli = 0;  // 0..3 = I,X,Y,Z
        double weight = 0.0;
    };
    double c_m = 1.0;
    double theta0 = 0.0;
    std::vector<Extra> extra;  // entries j = 2..d-1

    int dim() const { return 2 + static_cast<int>(extra.size()); }
};

KrausSet cluster_kraus();                 // {H, HZ} / sqrt(2)
KrausSet ghz_kraus();                     // {I, Z} / sqrt(2)
KrausSet aklt_kraus();                    // {X, XZ, Z} / sqrt(3)
KrausSet aklt_alt_kraus();                // relabeling {XZ, X, Z} / sqrt(3)
KrausSet depolarizing4_kraus(const Mat2& u = Mat2::identity(),
                             const Mat2& v = Mat2::identity());  // U sigma_i V / 2
KrausSet canonical_class_kraus(const CanonicalClassParams& p);

// Named boundary vectors: "0", "1", "+", "-", "y+", "y-".
Vec2 named_state(const std::string& name);

// Factory by preset name. Recognized names: cluster, ghz, aklt, aklt_alt,
// depolarizing4, canonical_class. depolarizing4 takes optional unitaries,
// canonical_class requires params.
struct PresetSpec {
    std::string name;
    int n = 8;
    Vec2 left = named_state("0");
    Vec2 right = named_state("0");
    Mat2 u = Mat2::identity();  // depolarizing4 only
    Mat2 v = Mat2::identity();
    CanonicalClassParams canonical;  // canonical_class only
};

MpsChain preset_chain(const PresetSpec& spec);

// Convenience: default boundaries, everything else preset-specific.
MpsChain preset_chain(const std::string& name, int n);

std::vector<std::string> preset_names();

// Parses "preset:cluster?n=16&left=0&right=+" style specs. Query keys:
// n, left, right (named states or "re,im,re,im"), u, v (named single-qubit
// gates I,H,X,Y,Z,S for depolarizing4), cm, theta0, thetas, paulis, weights
// (canonical_class; comma lists for sites j >= 2).
PresetSpec parse_preset_spec(const std::string& text);

}  // namespace cswire
