#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cswire/mat2.hpp"

namespace cswire {

// Seedable stream with platform-independent transforms. The engine is
// mt19937_64 (output sequence fixed by the standard); uniforms, Gaussians and
// CDF inversion are implemented here so results do not depend on the standard
// library's distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Derives an independent stream for shot `index` of a seeded run
    // (splitmix64 over seed ^ f(index)).
    static Rng for_shot(std::uint64_t seed, std::uint64_t index);

    std::uint64_t bits() { return eng_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian();

    // Index sampled by CDF inversion in ascending index order. Probabilities
    // are clamped at 0 and renormalized by their sum.
    int pick(std::span<const double> probabilities);

    cplx gaussian_cplx() { return {gaussian(), gaussian()}; }

    Vec2 random_pure_state();

    // Haar-distributed 2x2 unitary.
    Mat2 random_unitary();

    // Rows of a Haar-distributed d x d unitary (Gaussian + Gram-Schmidt).
    std::vector<std::vector<cplx>> random_unitary_rows(int d);

    // Point on the probability simplex (normalized exponentials).
    std::vector<double> random_simplex(int d);

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace cswire
