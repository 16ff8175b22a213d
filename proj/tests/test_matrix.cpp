#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "gammadil/matrix.hpp"

using namespace gammadil;

TEST_CASE("construction validates entry count and finiteness") {
    CHECK_NOTHROW(ComplexMatrix(2, 3, std::vector<Complex>(6, Complex{1.0, -1.0})));
    CHECK_THROWS_AS(ComplexMatrix(2, 3, std::vector<Complex>(5)), InvalidMatrix);
    CHECK_THROWS_AS(
        ComplexMatrix(1, 1, {Complex{std::numeric_limits<double>::quiet_NaN(), 0.0}}),
        InvalidMatrix);
    CHECK_THROWS_AS(
        ComplexMatrix(1, 1, {Complex{0.0, std::numeric_limits<double>::infinity()}}),
        InvalidMatrix);

    const ComplexMatrix empty;
    CHECK(empty.rows() == 0);
    CHECK(empty.empty());
}

TEST_CASE("arithmetic and adjoint") {
    const ComplexMatrix a(2, 2, {Complex{1, 0}, Complex{0, 1}, Complex{2, 0}, Complex{0, 0}});
    const ComplexMatrix b = ComplexMatrix::identity(2);

    const ComplexMatrix sum = a + b;
    CHECK(sum(0, 0) == Complex{2, 0});
    CHECK((a - a)(1, 0) == Complex{0, 0});

    const ComplexMatrix prod = a * b;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(prod(i, j) == a(i, j));

    const ComplexMatrix adj = adjoint(a);
    CHECK(adj(1, 0) == Complex{0, -1});
    CHECK(adj(0, 1) == Complex{2, 0});

    CHECK_THROWS_AS(a * ComplexMatrix(3, 3), InvalidMatrix);
    CHECK_THROWS_AS(a + ComplexMatrix(3, 3), InvalidMatrix);
}

TEST_CASE("zero-dimensional products behave like empty sums") {
    const ComplexMatrix tall(3, 0);
    const ComplexMatrix wide(0, 2);
    const ComplexMatrix prod = tall * wide;
    REQUIRE(prod.rows() == 3);
    REQUIRE(prod.cols() == 2);
    CHECK(max_abs(prod) == 0.0);
}

TEST_CASE("norms") {
    const ComplexMatrix a(2, 2, {Complex{3, 0}, Complex{0, 0}, Complex{0, 0}, Complex{4, 0}});
    CHECK(frobenius_norm(a) == Catch::Approx(5.0));
    CHECK(max_abs(a) == Catch::Approx(4.0));
}

TEST_CASE("block placement and extraction") {
    ComplexMatrix big(4, 4);
    const ComplexMatrix small_block(2, 2, {Complex{1, 0}, Complex{2, 0}, Complex{3, 0}, Complex{4, 0}});
    set_block(big, 1, 2, small_block);
    CHECK(big(1, 2) == Complex{1, 0});
    CHECK(big(2, 3) == Complex{4, 0});
    const ComplexMatrix back = get_block(big, 1, 2, 2, 2);
    CHECK(max_abs(back - small_block) == 0.0);
    CHECK_THROWS_AS(set_block(big, 3, 3, small_block), InvalidMatrix);
}

TEST_CASE("column masking equals multiplication by the projector") {
    const ComplexMatrix a(2, 3,
                          {Complex{1, 1}, Complex{2, 0}, Complex{3, 0}, Complex{4, 0},
                           Complex{5, 0}, Complex{6, 2}});
    const std::vector<char> mask{1, 0, 1};
    const ComplexMatrix masked = mask_columns(a, mask);
    CHECK(masked(0, 1) == Complex{0, 0});
    CHECK(masked(1, 1) == Complex{0, 0});
    CHECK(masked(0, 0) == a(0, 0));
    CHECK(masked(1, 2) == a(1, 2));
}

TEST_CASE("matrix-vector product") {
    const ComplexMatrix a(2, 2, {Complex{0, 1}, Complex{1, 0}, Complex{0, 0}, Complex{2, 0}});
    const std::vector<Complex> x{Complex{1, 0}, Complex{0, 1}};
    const std::vector<Complex> y = mat_vec(a, x);
    CHECK(y[0] == Complex{0, 2});
    CHECK(y[1] == Complex{0, 2});
}
