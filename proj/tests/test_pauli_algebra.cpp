#include <doctest.h>

#include <cmath>

#include "cswire/transfer.hpp"
#include "test_util.hpp"

using namespace cswire;

TEST_CASE("pauli decomposition of basis elements and H") {
    auto c = pauli_decompose(pauli(3));
    CHECK(std::abs(c[0]) < 1e-15);
    CHECK(std::abs(c[1]) < 1e-15);
    CHECK(std::abs(c[2]) < 1e-15);
    CHECK(std::abs(c[3] - 1.0) < 1e-15);

    auto h = pauli_decompose(hadamard());
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h[0]) < 1e-15);
    CHECK(std::abs(h[1] - s) < 1e-15);
    CHECK(std::abs(h[2]) < 1e-15);
    CHECK(std::abs(h[3] - s) < 1e-15);
}

TEST_CASE("pauli decompose/recompose round trip on random matrices") {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        Mat2 m{rng.gaussian_cplx(), rng.gaussian_cplx(), rng.gaussian_cplx(), rng.gaussian_cplx()};
        Mat2 back = pauli_recompose(pauli_decompose(m));
        CHECK(distance(m, back) <= 1e-12 * std::max(1.0, m.frobenius_norm()));
    }
}

TEST_CASE("transfer blocks of the shipped presets match hand conjugation") {
    SUBCASE("ghz: diag(0,0,1)") {
        auto t = transfer_matrix(ghz_kraus());
        Mat3 b = t.block();
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                CHECK(std::abs(b.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) -
                               (r == 2 && c == 2 ? 1.0 : 0.0)) < 1e-14);
    }
    SUBCASE("aklt: diag(-1/3,-1/3,-1/3)") {
        Mat3 b = transfer_matrix(aklt_kraus()).block();
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                CHECK(std::abs(b.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) -
                               (r == c ? -1.0 / 3.0 : 0.0)) < 1e-14);
    }
    SUBCASE("cluster: (x,y,z) -> (z,0,0) and nilpotent square") {
        Mat3 b = transfer_matrix(cluster_kraus()).block();
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                CHECK(std::abs(b.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) -
                               (r == 0 && c == 2 ? 1.0 : 0.0)) < 1e-14);
        CHECK(op_norm(b * b) < 1e-14);
    }
    SUBCASE("random stochastic-unitary sets match the conjugation oracle") {
        Rng rng(21);
        for (int t = 0; t < 50; ++t) {
            int d = 2 + static_cast<int>(rng.bits() % 3);
            KrausSet k = testutil::random_stochastic_unitary(rng, d, false);
            Mat3 b = transfer_matrix(k).block();
            auto oracle = testutil::block_by_conjugation(k);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    CHECK(std::abs(b.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) -
                                   oracle[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) <= 1e-12);
        }
    }
}

TEST_CASE("transfer matrix application equals channel application in Pauli coordinates") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        int d = 2 + static_cast<int>(rng.bits() % 3);
        KrausSet k = testutil::random_stochastic_unitary(rng, d, rng.uniform() < 0.3);
        PauliTransfer tm = transfer_matrix(k);
        Mat2 rho = density(rng.random_pure_state());
        auto v = density_coeffs(rho);
        std::array<double, 4> via_matrix = v;
        Mat2 via_channel = rho;
        for (int l = 1; l <= 64; ++l) {
            via_matrix = tm.apply(via_matrix);
            via_channel = k.apply(via_channel);
            if (l % 16 != 0) continue;
            auto want = density_coeffs(via_channel);
            for (int j = 0; j < 4; ++j)
                CHECK(std::abs(via_matrix[static_cast<std::size_t>(j)] - want[static_cast<std::size_t>(j)]) <= 1e-10);
        }
    }
}

TEST_CASE("verify_cptp") {
    SUBCASE("cluster is exactly trace preserving and unital") {
        auto rep = verify_cptp(cluster_kraus());
        CHECK(rep.trace_preserving);
        CHECK(rep.unital);
        CHECK(rep.cond1_residual <= 1e-14);
        CHECK(rep.cond2_residual <= 1e-14);
    }
    SUBCASE("a single I/sqrt(2) operator fails Cond1") {
        auto k = KrausSet::make({cplx(1.0 / std::sqrt(2.0)) * Mat2::identity()});
        auto rep = verify_cptp(k);
        CHECK(!rep.trace_preserving);
        CHECK(rep.cond1_residual == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("200 random stochastic-unitary sets have tiny residuals") {
        Rng rng(41);
        for (int t = 0; t < 200; ++t) {
            int d = 2 + static_cast<int>(rng.bits() % 3);
            auto rep = verify_cptp(testutil::random_stochastic_unitary(rng, d, false));
            CHECK(rep.cond1_residual <= 1e-10);
            CHECK(rep.cond2_residual <= 1e-10);
            CHECK(rep.trace_preserving);
            CHECK(rep.unital);
        }
    }
}

TEST_CASE("verify_stochastic_unitary") {
    SUBCASE("aklt weights are 1/3 each") {
        auto rep = verify_stochastic_unitary(aklt_kraus());
        REQUIRE(rep.ok);
        REQUIRE(rep.weights.size() == 3);
        for (double w : rep.weights) CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("cluster weights are 1/2 each") {
        auto rep = verify_stochastic_unitary(cluster_kraus());
        REQUIRE(rep.ok);
        CHECK(rep.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(rep.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("projector pair {|0><0|, |1><1|} is rejected") {
        auto k = KrausSet::make({Mat2{1, 0, 0, 0}, Mat2{0, 0, 0, 1}});
        auto rep = verify_stochastic_unitary(k);
        CHECK(!rep.ok);
        CHECK(!rep.violation.empty());
    }
}

TEST_CASE("block norm") {
    CHECK(block_norm(transfer_matrix(aklt_kraus())) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(block_norm(transfer_matrix(ghz_kraus())) == doctest::Approx(1.0).epsilon(1e-12));
    auto t = transfer_matrix(cluster_kraus());
    CHECK(block_norm(t) == doctest::Approx(1.0).epsilon(1e-12));
    Mat3 sq = t.block() * t.block();
    CHECK(op_norm(sq) <= 1e-14);
}

TEST_CASE("structure of the transfer matrix for stochastic-unitary sets") {
    Rng rng(51);
    for (int t = 0; t < 60; ++t) {
        int d = 2 + static_cast<int>(rng.bits() % 3);
        KrausSet k = testutil::random_stochastic_unitary(rng, d, rng.uniform() < 0.25);
        PauliTransfer tm = transfer_matrix(k);
        CHECK(std::abs(tm.m.at(0, 0) - 1.0) <= 1e-10);
        for (int j = 1; j < 4; ++j) {
            CHECK(std::abs(tm.m.at(0, static_cast<std::size_t>(j))) <= 1e-10);
            CHECK(std::abs(tm.m.at(static_cast<std::size_t>(j), 0)) <= 1e-10);
        }
        // Entrywise realness of the block: imaginary parts of the complex
        // trace coefficients are pure roundoff.
        for (int c = 1; c < 4; ++c) {
            Mat2 image = k.apply(pauli(c));
            auto coeff = pauli_decompose(image);
            for (int r = 1; r < 4; ++r)
                CHECK(std::abs(coeff[static_cast<std::size_t>(r)].imag()) <= 1e-12);
        }
        CHECK(block_norm(tm) <= 1.0 + 1e-10);
    }
}
