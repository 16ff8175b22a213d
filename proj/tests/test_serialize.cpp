#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "gammadil/random.hpp"
#include "gammadil/serialize.hpp"

using namespace gammadil;

TEST_CASE("matrix JSON round trip is exact") {
    Xorshift64Star rng(1);
    const ComplexMatrix m = random_matrix(rng, 3, 5);
    const ComplexMatrix back = matrix_from_json(matrix_to_json(m));
    REQUIRE(back.rows() == 3);
    REQUIRE(back.cols() == 5);
    CHECK(max_abs(back - m) == 0.0);
}

TEST_CASE("matrix JSON rejects malformed input") {
    json bad = matrix_to_json(ComplexMatrix::identity(2));
    bad["data"].erase(0);
    CHECK_THROWS_AS(matrix_from_json(bad), InvalidMatrix);

    CHECK_THROWS_AS(matrix_from_json(json{{"rows", 1}, {"cols", 1}}), InvalidMatrix);
    CHECK_THROWS_AS(matrix_from_json(json{{"rows", -1}, {"cols", 1}, {"data", json::array()}}),
                    InvalidMatrix);

    json scalars = json{{"rows", 1}, {"cols", 1}, {"data", {{1.0, 2.0, 3.0}}}};
    CHECK_THROWS_AS(matrix_from_json(scalars), InvalidMatrix);
}

TEST_CASE("pair JSON round trip and validation") {
    const GammaPair pair = random_gamma_pair(9, 3);
    const json doc = pair_to_json(pair);
    const GammaPair back = pair_from_json(doc);
    CHECK(max_abs(back.s - pair.s) == 0.0);
    CHECK(max_abs(back.p - pair.p) == 0.0);

    // a parsable pair that is not a valid operator pair
    const json outside = json{{"S", matrix_to_json(ComplexMatrix(1, 1, {Complex{3, 0}}))},
                              {"P", matrix_to_json(ComplexMatrix(1, 1, {Complex{1, 0}}))}};
    CHECK_NOTHROW(pair_matrices_from_json(outside));
    CHECK_THROWS_AS(pair_from_json(outside), NotContractions);

    CHECK_THROWS_AS(pair_matrices_from_json(json{{"S", 1}}), InvalidMatrix);
}

TEST_CASE("polynomial and grid round trips") {
    Xorshift64Star rng(2);
    const BivariatePolynomial f = random_bivariate_polynomial(rng, 3);
    const BivariatePolynomial back = polynomial_from_json(polynomial_to_json(f));
    REQUIRE(back.terms().size() == f.terms().size());
    const Complex at = back.eval(Complex{0.3, 0.1}, Complex{-0.2, 0.4});
    CHECK(std::abs(at - f.eval(Complex{0.3, 0.1}, Complex{-0.2, 0.4})) == 0.0);

    CoeffGrid g(3);
    g.at(1, 2) = Complex{0.5, -0.25};
    const CoeffGrid gback = grid_from_json(grid_to_json(g));
    CHECK(max_abs_diff(gback, g) == 0.0);

    json bad = grid_to_json(g);
    bad["a"].erase(0);
    CHECK_THROWS_AS(grid_from_json(bad), InvalidMatrix);
}

TEST_CASE("dilation JSON carries depth, dims and the four operators") {
    const GammaPair pair = random_gamma_pair(11, 2);
    const TruncatedDilation d =
        build_dilation(pair, solve_fundamental(pair), solve_fundamental_adjoint(pair), 4);
    const json doc = dilation_to_json(d);
    CHECK(doc["depth"] == 4);
    CHECK(doc["dims"]["dim_h"] == 2);
    const ComplexMatrix uni = matrix_from_json(doc["uni_prod"]);
    CHECK(max_abs(uni - d.uni_prod) == 0.0);
}

TEST_CASE("serialization is byte deterministic") {
    const GammaPair a = random_gamma_pair(77, 4);
    const GammaPair b = random_gamma_pair(77, 4);
    CHECK(pair_to_json(a).dump(2) == pair_to_json(b).dump(2));
}

TEST_CASE("report JSON keeps residuals, thresholds and pass flags") {
    VerificationReport rep;
    rep.instance = "unit";
    rep.add("alpha", 1e-12, 1e-8);
    rep.add("beta", 2.0, 1.0);
    CHECK_FALSE(rep.overall_pass());

    const json doc = report_to_json(rep);
    CHECK(doc["overall_pass"] == false);
    CHECK(doc["checks"]["alpha"]["pass"] == true);
    CHECK(doc["checks"]["beta"]["residual"] == 2.0);

    rep.checks.erase("beta");
    CHECK(rep.overall_pass());
}
