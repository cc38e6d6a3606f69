#include <doctest.h>

#include <cmath>

#include "cswire/oracle.hpp"
#include "test_util.hpp"

using namespace cswire;

TEST_CASE("make_chain validates its inputs") {
    CHECK_NOTHROW(make_chain(cluster_kraus(), named_state("0"), named_state("0"), 10));
    CHECK_NOTHROW(make_chain(ghz_kraus(), named_state("+"), named_state("+"), 8));
    SUBCASE("scaled Kraus set is rejected naming Cond1") {
        auto bad = KrausSet::make({cplx(0.9 / std::sqrt(2.0)) * hadamard(),
                                   cplx(0.9 / std::sqrt(2.0)) * (hadamard() * pauli(3))});
        CHECK_THROWS_WITH_AS(make_chain(bad, named_state("0"), named_state("0"), 4),
                             doctest::Contains("Cond1"), validation_error);
    }
    SUBCASE("zero-length chain is rejected") {
        CHECK_THROWS_AS(make_chain(cluster_kraus(), named_state("0"), named_state("0"), 0),
                        validation_error);
    }
    SUBCASE("non-unit boundary is rejected") {
        CHECK_THROWS_AS(make_chain(cluster_kraus(), Vec2{0.5, 0}, named_state("0"), 4),
                        validation_error);
    }
}

TEST_CASE("normalization factor closed cases") {
    SUBCASE("aklt, R=|0>, psi=|0><0|, m=2 gives 5/9") {
        double f = normalization_factor(aklt_kraus(), named_state("0"), density(named_state("0")), 2);
        CHECK(f == doctest::Approx(5.0 / 9.0).epsilon(1e-13));
    }
    SUBCASE("cluster reaches 1/2 for every m >= 2") {
        Rng rng(5);
        auto k = cluster_kraus();
        for (int t = 0; t < 20; ++t) {
            Vec2 r = rng.random_pure_state();
            Mat2 psi = density(rng.random_pure_state());
            for (int m = 2; m <= 8; ++m)
                CHECK(normalization_factor(k, r, psi, m) == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
    SUBCASE("ghz with R=|0>, psi=|0><0| stays 1") {
        auto k = ghz_kraus();
        for (int m = 0; m <= 10; ++m)
            CHECK(normalization_factor(k, named_state("0"), density(named_state("0")), m) ==
                  doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("m=0 returns <R|psi|R>") {
        Rng rng(6);
        Vec2 r = rng.random_pure_state();
        Vec2 p = rng.random_pure_state();
        CHECK(normalization_factor(ghz_kraus(), r, density(p), 0) ==
              doctest::Approx(std::norm(dot(r, p))).epsilon(1e-13));
    }
}

TEST_CASE("transfer-power normalization equals repeated conjugation up to m = 64") {
    Rng rng(7);
    for (int t = 0; t < 15; ++t) {
        int d = 2 + static_cast<int>(rng.bits() % 3);
        KrausSet k = testutil::random_stochastic_unitary(rng, d, rng.uniform() < 0.3);
        PauliTransfer tm = transfer_matrix(k);
        Vec2 r = rng.random_pure_state();
        Mat2 psi = density(rng.random_pure_state());
        for (int m : {0, 1, 2, 5, 17, 64}) {
            double a = normalization_factor(tm, r, psi, m);
            double b = testutil::normalization_by_conjugation(k, r, psi, m);
            CHECK(std::abs(a - b) <= 1e-10);
        }
    }
}

TEST_CASE("aklt closed-form normalization factor") {
    Rng rng(8);
    auto k = aklt_kraus();
    PauliTransfer tm = transfer_matrix(k);
    for (int t = 0; t < 40; ++t) {
        Vec2 r = rng.random_pure_state();
        Vec2 p = rng.random_pure_state();
        Mat2 psi = density(p);
        auto e = density_coeffs(psi);       // psi = I/2 + sum e_i sigma_i (coeffs halved)
        auto rs = boundary_coeffs(r);
        for (int m = 0; m <= 30; ++m) {
            double want = 0.5 + std::pow(-1.0 / 3.0, m) *
                                    (2.0 * e[1] * rs[1] + 2.0 * e[2] * rs[2] + 2.0 * e[3] * rs[3]) / 2.0;
            CHECK(std::abs(normalization_factor(tm, r, psi, m) - want) <= 1e-12);
        }
    }
}

TEST_CASE("full state vector for the ghz presets") {
    SUBCASE("|0> boundaries: uniform amplitudes") {
        auto chain = make_chain(ghz_kraus(), named_state("0"), named_state("0"), 3);
        auto amps = full_state_vector(chain);
        REQUIRE(amps.size() == 8);
        const double want = std::pow(2.0, -1.5);
        for (const auto& a : amps) CHECK(std::abs(a - want) <= 1e-12);
    }
    SUBCASE("|+> boundaries: uniform on even-parity strings") {
        auto chain = make_chain(ghz_kraus(), named_state("+"), named_state("+"), 3);
        auto amps = full_state_vector(chain);
        REQUIRE(amps.size() == 8);
        for (std::size_t s = 0; s < 8; ++s) {
            int ones = __builtin_popcount(static_cast<unsigned>(s));
            double want = ones % 2 == 0 ? 0.5 : 0.0;
            CHECK(std::abs(amps[s] - want) <= 1e-12);
        }
    }
}

TEST_CASE("one-site cluster amplitudes against the direct contraction") {
    auto chain = make_chain(cluster_kraus(), named_state("0"), named_state("+"), 1);
    auto amps = full_state_vector(chain);
    REQUIRE(amps.size() == 2);
    cplx a0 = dot(named_state("+"), cluster_kraus().ops[0] * named_state("0"));
    cplx a1 = dot(named_state("+"), cluster_kraus().ops[1] * named_state("0"));
    double norm = std::sqrt(std::norm(a0) + std::norm(a1));
    CHECK(std::abs(amps[0] - a0 / norm) <= 1e-13);
    CHECK(std::abs(amps[1] - a1 / norm) <= 1e-13);
}

TEST_CASE("state-vector norm self-check across presets") {
    Rng rng(9);
    for (const auto& name : {"cluster", "ghz", "aklt", "depolarizing4"}) {
        auto chain = preset_chain(name, 6);
        auto amps = full_state_vector(chain);
        double norm_sq = 0;
        for (const auto& a : amps) norm_sq += std::norm(a);
        CHECK(std::abs(norm_sq - 1.0) <= 1e-10);
    }
}

TEST_CASE("finite-l presets pin the normalization factor at 1/2 past l") {
    Rng rng(10);
    struct Case {
        KrausSet k;
        int l;
    };
    std::vector<Case> cases;
    cases.push_back({cluster_kraus(), 2});
    cases.push_back({depolarizing4_kraus(rng.random_unitary(), rng.random_unitary()), 1});
    for (const auto& c : cases) {
        PauliTransfer tm = transfer_matrix(c.k);
        for (int t = 0; t < 100; ++t) {
            Vec2 r = rng.random_pure_state();
            Mat2 psi = density(rng.random_pure_state());
            for (int m = c.l; m <= c.l + 6; ++m)
                CHECK(std::abs(normalization_factor(tm, r, psi, m) - 0.5) <= 1e-10);
        }
    }
}

TEST_CASE("state vector size guard") {
    auto chain = make_chain(depolarizing4_kraus(), named_state("0"), named_state("0"), 13);
    CHECK_THROWS_AS(full_state_vector(chain), validation_error);  // 4^13 > 1e7
}
