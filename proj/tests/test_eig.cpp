#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gammadil/eig.hpp"
#include "gammadil/random.hpp"

using namespace gammadil;

namespace {

ComplexMatrix reconstruct(const EigenDecomposition& eig) {
    ComplexMatrix scaled = eig.vectors;
    for (std::size_t k = 0; k < eig.values.size(); ++k)
        for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, k) *= eig.values[k];
    return scaled * adjoint(eig.vectors);
}

} // namespace

TEST_CASE("eigendecomposition of trivial matrices") {
    const EigenDecomposition id = hermitian_eig(ComplexMatrix::identity(2));
    CHECK(id.values[0] == Catch::Approx(1.0));
    CHECK(id.values[1] == Catch::Approx(1.0));
    CHECK(operator_norm(id.vectors * adjoint(id.vectors) - ComplexMatrix::identity(2)) < 1e-12);

    const EigenDecomposition diag =
        hermitian_eig(ComplexMatrix::diagonal({Complex{3, 0}, Complex{-1, 0}}));
    CHECK(diag.values[0] == Catch::Approx(-1.0));
    CHECK(diag.values[1] == Catch::Approx(3.0));
}

TEST_CASE("reconstruction residual on a seeded Hermitian matrix") {
    Xorshift64Star rng(42);
    const ComplexMatrix b = random_matrix(rng, 8, 8);
    const ComplexMatrix a = b + adjoint(b);
    const EigenDecomposition eig = hermitian_eig(a);

    const double scale = frobenius_norm(a);
    CHECK(frobenius_norm(a - reconstruct(eig)) <= 1e-10 * scale);
    CHECK(frobenius_norm(adjoint(eig.vectors) * eig.vectors - ComplexMatrix::identity(8)) <= 1e-10);
    for (std::size_t k = 1; k < eig.values.size(); ++k) CHECK(eig.values[k - 1] <= eig.values[k]);
}

TEST_CASE("non-Hermitian input is rejected") {
    const ComplexMatrix a(2, 2, {Complex{0, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}});
    CHECK_THROWS_AS(hermitian_eig(a), NotHermitian);
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), NotHermitian);
}

TEST_CASE("psd square root") {
    CHECK(max_abs(psd_sqrt(ComplexMatrix::identity(3)) - ComplexMatrix::identity(3)) < 1e-12);

    const ComplexMatrix d = psd_sqrt(ComplexMatrix::diagonal({Complex{4, 0}, Complex{9, 0}}));
    CHECK(d(0, 0).real() == Catch::Approx(2.0));
    CHECK(d(1, 1).real() == Catch::Approx(3.0));

    Xorshift64Star rng(7);
    const ComplexMatrix c = random_matrix(rng, 6, 6);
    const ComplexMatrix a = adjoint(c) * c;
    const ComplexMatrix s = psd_sqrt(a);
    CHECK(operator_norm(s * s - a) <= 1e-10 * (1.0 + operator_norm(a)));

    CHECK_THROWS_AS(psd_sqrt(ComplexMatrix::diagonal({Complex{1, 0}, Complex{-1, 0}})), NotPSD);
}

TEST_CASE("psd square root squares back for a thousand seeded matrices") {
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
        Xorshift64Star rng(10000 + trial);
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next() % 16);
        const ComplexMatrix c = random_matrix(rng, n, n);
        const ComplexMatrix a = adjoint(c) * c;
        const ComplexMatrix s = psd_sqrt(a);
        REQUIRE(operator_norm(s * s - a) <= 1e-10 * (1.0 + operator_norm(a)));
    }
}

TEST_CASE("range basis") {
    const RangeBasis full = range_basis(ComplexMatrix::identity(3));
    CHECK(full.rank == 3);
    CHECK(max_abs(full.projector - ComplexMatrix::identity(3)) < 1e-12);

    const RangeBasis none = range_basis(ComplexMatrix(3, 3));
    CHECK(none.rank == 0);
    CHECK(none.basis.cols() == 0);
    CHECK(max_abs(none.projector) == 0.0);

    const RangeBasis one =
        range_basis(ComplexMatrix::diagonal({Complex{1, 0}, Complex{1e-15, 0}}), 1e-10);
    REQUIRE(one.rank == 1);
    CHECK(std::abs(one.basis(0, 0)) == Catch::Approx(1.0));
    CHECK(std::abs(one.basis(1, 0)) < 1e-9);
}

TEST_CASE("range projector laws on seeded PSD matrices") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        Xorshift64Star rng(500 + trial);
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 8);
        const std::size_t r = 1 + static_cast<std::size_t>(rng.next() % n);
        const ComplexMatrix c = random_matrix(rng, n, r);
        const ComplexMatrix d = c * adjoint(c); // PSD with rank at most r
        const RangeBasis rb = range_basis(d);
        const ComplexMatrix& proj = rb.projector;

        REQUIRE(operator_norm(proj * proj - proj) <= 1e-10);
        REQUIRE(operator_norm(proj - adjoint(proj)) <= 1e-10);
        const std::vector<double> vals = hermitian_eigenvalues(d);
        const double lam_max = std::max(vals.back(), 0.0);
        REQUIRE(operator_norm(proj * d - d) <=
                1e-10 * lam_max * static_cast<double>(n) + 1e-12);
    }
}

TEST_CASE("pseudoinverse application") {
    const ComplexMatrix m(2, 2, {Complex{1, 2}, Complex{0, 0}, Complex{3, 0}, Complex{4, 0}});
    CHECK(max_abs(pinv_apply(ComplexMatrix::identity(2), m) - m) < 1e-12);

    const ComplexMatrix d = ComplexMatrix::diagonal({Complex{2, 0}, Complex{0, 0}});
    const ComplexMatrix rhs = ComplexMatrix::diagonal({Complex{4, 0}, Complex{7, 0}});
    const ComplexMatrix out = pinv_apply(d, rhs);
    CHECK(out(0, 0).real() == Catch::Approx(2.0));
    CHECK(std::abs(out(1, 1)) < 1e-12);
}

TEST_CASE("two-sided pseudoinversion recovers the projected middle factor") {
    Xorshift64Star rng(99);
    const ComplexMatrix c = random_matrix(rng, 6, 4);
    const ComplexMatrix d = c * adjoint(c); // PSD, rank 4
    const ComplexMatrix x = random_matrix(rng, 6, 6);
    const ComplexMatrix m = d * x * d;

    const ComplexMatrix left = pinv_apply(d, m);
    const ComplexMatrix recovered = adjoint(pinv_apply(d, adjoint(left)));
    const ComplexMatrix proj = range_basis(d).projector;
    CHECK(operator_norm(recovered - proj * x * proj) <= 1e-8);
}

TEST_CASE("operator norm matches the Gram spectrum on both code paths") {
    Xorshift64Star rng(3);
    const ComplexMatrix a = random_matrix(rng, 10, 10);
    const std::vector<double> vals = hermitian_eigenvalues(adjoint(a) * a);
    CHECK(operator_norm(a) == Catch::Approx(std::sqrt(vals.back())).margin(1e-10));

    // large path goes through power iteration
    const std::size_t n = 60;
    Xorshift64Star rng2(4);
    ComplexMatrix big = random_matrix(rng2, n, n);
    const double exact = std::sqrt(hermitian_eigenvalues(adjoint(big) * big).back());
    CHECK(operator_norm(big) == Catch::Approx(exact).epsilon(1e-8));

    CHECK(operator_norm(ComplexMatrix(0, 0)) == 0.0);
    CHECK(operator_norm(ComplexMatrix(5, 5)) == 0.0);
}
