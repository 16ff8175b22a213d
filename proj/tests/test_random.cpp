#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gammadil/random.hpp"

using namespace gammadil;

TEST_CASE("generator streams are reproducible and seed-sensitive") {
    Xorshift64Star a(123), b(123), c(124);
    bool all_equal = true, any_equal_c = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next();
        all_equal = all_equal && (va == b.next());
        any_equal_c = any_equal_c || (va == c.next());
    }
    CHECK(all_equal);
    CHECK_FALSE(any_equal_c);

    Xorshift64Star zero(0), nonzero(1);
    CHECK(zero.next() != 0); // zero seed is remapped, the stream still runs
    CHECK(zero.next() != nonzero.next());
}

TEST_CASE("uniform output stays in range") {
    Xorshift64Star rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double v = rng.uniform_pm1();
        REQUIRE(v >= -1.0);
        REQUIRE(v < 1.0);
    }
}

TEST_CASE("generated pairs are bitwise reproducible") {
    const GammaPair a = random_gamma_pair(2024, 5);
    const GammaPair b = random_gamma_pair(2024, 5);
    REQUIRE(a.s.data().size() == b.s.data().size());
    for (std::size_t k = 0; k < a.s.data().size(); ++k) {
        CHECK(a.s.data()[k] == b.s.data()[k]);
        CHECK(a.p.data()[k] == b.p.data()[k]);
    }
}

TEST_CASE("scaling hits the requested norm") {
    Xorshift64Star rng(6);
    const ComplexMatrix t = random_contraction(rng, 6);
    CHECK(operator_norm(t) == Catch::Approx(0.95).margin(1e-12));
    CHECK(max_abs(scaled_to_norm(ComplexMatrix(3, 3), 0.5)) == 0.0);
}

TEST_CASE("generated pairs commute and are inside the norm bounds") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::size_t n = 1 + static_cast<std::size_t>(seed % 6);
        const GammaPair pair = random_gamma_pair(seed, n);
        REQUIRE(pair.commutation_residual <=
                1e-10 * (operator_norm(pair.s) + 1.0) * (operator_norm(pair.p) + 1.0));
        REQUIRE(operator_norm(pair.p) <= 1.0 + 1e-10);
        REQUIRE(operator_norm(pair.s) <= 2.0 + 1e-10);
    }
}

TEST_CASE("scalar instances are inside the domain") {
    for (std::uint64_t seed = 40; seed < 50; ++seed) {
        const GammaPair pair = random_gamma_pair(seed, 1);
        REQUIRE(point_in_gamma(pair.s(0, 0), pair.p(0, 0)));
    }
}

TEST_CASE("unitary factories produce unitaries") {
    Xorshift64Star rng(7);
    const ComplexMatrix q = random_unitary(rng, 6);
    CHECK(operator_norm(adjoint(q) * q - ComplexMatrix::identity(6)) < 1e-12);

    const ComplexMatrix w = random_diagonal_unitary(rng, 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(w(i, i)) == Catch::Approx(1.0));
}
