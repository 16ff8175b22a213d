#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gammadil/serialize.hpp"

using namespace gammadil;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int run(const std::string& args) {
    const std::string cmd = std::string(GAMMADIL_CLI) + " " + args;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("gen emits identical bytes for identical seeds") {
    REQUIRE(run("gen --seed 1 --size 4 > cli_gen_a.json 2> /dev/null") == 0);
    REQUIRE(run("gen --seed 1 --size 4 > cli_gen_b.json 2> /dev/null") == 0);
    REQUIRE(run("gen --seed 2 --size 4 > cli_gen_c.json 2> /dev/null") == 0);

    const std::string a = slurp("cli_gen_a.json");
    CHECK(a == slurp("cli_gen_b.json"));
    CHECK(a != slurp("cli_gen_c.json"));
    CHECK_FALSE(a.empty());
}

TEST_CASE("gen then verify passes end to end") {
    REQUIRE(run("gen --seed 5 --size 3 > cli_pair.json 2> /dev/null") == 0);
    REQUIRE(run("verify --input cli_pair.json > cli_report.json 2> /dev/null") == 0);

    const json rep = json::parse(slurp("cli_report.json"));
    CHECK(rep["overall_pass"] == true);
    CHECK(rep["checks"].contains("fundamental/residual"));
    CHECK(rep["checks"].contains("unitary/sum_adjoint_relation"));
    CHECK(rep["checks"]["minimality/span_deficit"]["residual"] == 0.0);
}

TEST_CASE("verify passes the fully hand-checkable scalar pair") {
    {
        std::ofstream out("cli_golden.json");
        out << json{{"S", matrix_to_json(ComplexMatrix(1, 1, {Complex{1, 0}}))},
                    {"P", matrix_to_json(ComplexMatrix(1, 1, {Complex{0, 0}}))}}
                   .dump();
    }
    REQUIRE(run("verify --input cli_golden.json > cli_golden_report.json 2> /dev/null") == 0);
    const json rep = json::parse(slurp("cli_golden_report.json"));
    CHECK(rep["overall_pass"] == true);
    CHECK(rep["checks"]["gamma_membership"]["pass"] == true);
    CHECK(rep["checks"]["fundamental/radius"]["residual"].get<double>() ==
          Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("verify fails fast on a point outside the domain") {
    {
        std::ofstream out("cli_outside.json");
        out << json{{"S", matrix_to_json(ComplexMatrix(1, 1, {Complex{3, 0}}))},
                    {"P", matrix_to_json(ComplexMatrix(1, 1, {Complex{1, 0}}))}}
                   .dump();
    }
    CHECK(run("verify --input cli_outside.json > cli_outside_report.json 2> /dev/null") == 1);
    const json rep = json::parse(slurp("cli_outside_report.json"));
    CHECK(rep["checks"]["gamma_membership"]["pass"] == false);
    CHECK(rep["overall_pass"] == false);
}

TEST_CASE("verify reports IO and parse problems as usage errors") {
    CHECK(run("verify --input does_not_exist.json 2> /dev/null") == 2);
    {
        std::ofstream out("cli_garbage.json");
        out << "{ this is not json";
    }
    CHECK(run("verify --input cli_garbage.json 2> /dev/null") == 2);
    CHECK(run("verify 2> /dev/null") == 2); // missing --input
    CHECK(run("verify --input cli_pair.json --depth 4 --window 6 2> /dev/null") == 2);
}

TEST_CASE("hardy subcommand runs the exact suite") {
    REQUIRE(run("hardy --grid-d 6 > cli_hardy.json 2> /dev/null") == 0);
    const json rep = json::parse(slurp("cli_hardy.json"));
    CHECK(rep["overall_pass"] == true);
    CHECK(rep["checks"]["model/isometry"]["residual"] == 0.0);
    CHECK(rep["checks"]["crosscheck/sym"]["pass"] == true);

    CHECK(run("hardy --grid-d 4 > /dev/null 2> /dev/null") == 0);
    CHECK(run("hardy --grid-d 2 2> /dev/null") == 2);
}

TEST_CASE("tolerance overrides are validated") {
    CHECK(run("hardy --grid-d 4 --tol eps_lin=1e-9 > /dev/null 2> /dev/null") == 0);
    CHECK(run("hardy --grid-d 4 --tol nonsense=1 2> /dev/null") == 2);
    CHECK(run("hardy --grid-d 4 --tol eps_lin=banana 2> /dev/null") == 2);
    CHECK(run("hardy --grid-d 4 --tol eps_lin=-1 2> /dev/null") == 2);
}

TEST_CASE("config file supplies defaults and flags win") {
    {
        std::ofstream out("cli_config.txt");
        out << "seed=9\nsize=2\n";
    }
    REQUIRE(run("gen --config cli_config.txt > cli_from_config.json 2> /dev/null") == 0);
    REQUIRE(run("gen --seed 9 --size 2 > cli_direct.json 2> /dev/null") == 0);
    CHECK(slurp("cli_from_config.json") == slurp("cli_direct.json"));

    REQUIRE(run("gen --config cli_config.txt --size 3 > cli_override.json 2> /dev/null") == 0);
    const json pair = json::parse(slurp("cli_override.json"));
    CHECK(pair["S"]["rows"] == 3);
}

TEST_CASE("human flag switches the stdout format") {
    REQUIRE(run("hardy --grid-d 4 --human > cli_human.txt 2> /dev/null") == 0);
    const std::string text = slurp("cli_human.txt");
    CHECK(text.find("overall: PASS") != std::string::npos);
}
