#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gammadil/dilation.hpp"
#include "gammadil/errors.hpp"
#include "gammadil/gamma.hpp"
#include "gammadil/hardy.hpp"
#include "gammadil/matrix.hpp"
#include "gammadil/report.hpp"

namespace gammadil {

using nlohmann::json;

// ---------------------------------------------------------------------------
// ComplexMatrix <-> {"rows": n, "cols": m, "data": [[re, im], ...]} row-major
// ---------------------------------------------------------------------------

inline json matrix_to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (const Complex& z : m.data()) data.push_back({z.real(), z.imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw InvalidMatrix("matrix JSON needs rows, cols and data");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw InvalidMatrix("matrix dimensions must be nonnegative integers");
    const std::size_t rows = j["rows"].get<std::size_t>();
    const std::size_t cols = j["cols"].get<std::size_t>();
    const json& data = j["data"];
    if (!data.is_array() || data.size() != rows * cols)
        throw InvalidMatrix("matrix data length does not match rows*cols");

    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (const json& cell : data) {
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
            throw InvalidMatrix("matrix entries must be [re, im] pairs");
        entries.emplace_back(cell[0].get<double>(), cell[1].get<double>());
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

// ---------------------------------------------------------------------------
// GammaPair <-> {"S": <matrix>, "P": <matrix>}
// ---------------------------------------------------------------------------

inline json pair_to_json(const GammaPair& pair) {
    return json{{"S", matrix_to_json(pair.s)}, {"P", matrix_to_json(pair.p)}};
}

/// Parses only; invariants are checked by make_gamma_pair so that callers
/// can separate malformed input from operator pairs that fail the geometry.
inline std::pair<ComplexMatrix, ComplexMatrix> pair_matrices_from_json(const json& j) {
    if (!j.is_object() || !j.contains("S") || !j.contains("P"))
        throw InvalidMatrix("pair JSON needs S and P");
    return {matrix_from_json(j["S"]), matrix_from_json(j["P"])};
}

inline GammaPair pair_from_json(const json& j, const Tolerances& tols = {}) {
    auto [s, p] = pair_matrices_from_json(j);
    return make_gamma_pair(s, p, tols);
}

// ---------------------------------------------------------------------------
// BivariatePolynomial <-> {"terms": [{"m": int, "n": int, "c": [re, im]}]}
// ---------------------------------------------------------------------------

inline json polynomial_to_json(const BivariatePolynomial& f) {
    json terms = json::array();
    for (const BivariateTerm& t : f.terms())
        terms.push_back({{"m", t.deg_s}, {"n", t.deg_p}, {"c", {t.coeff.real(), t.coeff.imag()}}});
    return json{{"terms", std::move(terms)}};
}

inline BivariatePolynomial polynomial_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw InvalidMatrix("polynomial JSON needs a terms array");
    std::vector<BivariateTerm> terms;
    for (const json& t : j["terms"]) {
        if (!t.contains("m") || !t.contains("n") || !t.contains("c") || !t["c"].is_array() ||
            t["c"].size() != 2)
            throw InvalidMatrix("polynomial term needs m, n and c = [re, im]");
        terms.push_back({t["m"].get<int>(), t["n"].get<int>(),
                         Complex{t["c"][0].get<double>(), t["c"][1].get<double>()}});
    }
    return BivariatePolynomial(std::move(terms));
}

// ---------------------------------------------------------------------------
// CoeffGrid <-> {"d": int, "a": [[re, im], ...]} row-major
// ---------------------------------------------------------------------------

inline json grid_to_json(const CoeffGrid& g) {
    json data = json::array();
    for (const Complex& z : g.a) data.push_back({z.real(), z.imag()});
    return json{{"d", g.d}, {"a", std::move(data)}};
}

inline CoeffGrid grid_from_json(const json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("a") || !j["a"].is_array())
        throw InvalidMatrix("grid JSON needs d and a");
    const std::size_t d = j["d"].get<std::size_t>();
    if (j["a"].size() != d * d) throw InvalidMatrix("grid data length does not match d*d");
    CoeffGrid g(d);
    std::size_t k = 0;
    for (const json& cell : j["a"]) {
        if (!cell.is_array() || cell.size() != 2)
            throw InvalidMatrix("grid entries must be [re, im] pairs");
        g.a[k++] = Complex{cell[0].get<double>(), cell[1].get<double>()};
    }
    return g;
}

// ---------------------------------------------------------------------------
// TruncatedDilation (write-only: depth, dims and the four operators)
// ---------------------------------------------------------------------------

inline json dilation_to_json(const TruncatedDilation& d) {
    return json{{"depth", d.depth},
                {"dims",
                 {{"dim_h", d.dim_h},
                  {"tail_p", d.depth * d.rank_p},
                  {"tail_pstar", d.depth * d.rank_pstar}}},
                {"iso_sum", matrix_to_json(d.iso_sum)},
                {"iso_prod", matrix_to_json(d.iso_prod)},
                {"uni_sum", matrix_to_json(d.uni_sum)},
                {"uni_prod", matrix_to_json(d.uni_prod)}};
}

// ---------------------------------------------------------------------------
// VerificationReport
// ---------------------------------------------------------------------------

inline json report_to_json(const VerificationReport& rep) {
    json checks = json::object();
    for (const auto& [name, check] : rep.checks)
        checks[name] = {{"residual", check.residual},
                        {"threshold", check.threshold},
                        {"pass", check.pass}};
    return json{{"instance", rep.instance},
                {"checks", std::move(checks)},
                {"overall_pass", rep.overall_pass()},
                {"timings_ms", rep.timings_ms}};
}

inline void print_human(const VerificationReport& rep, std::ostream& out) {
    out << "instance: " << rep.instance << "\n";
    for (const auto& [name, check] : rep.checks)
        out << "  " << (check.pass ? "[ ok ] " : "[FAIL] ") << name
            << "  residual=" << check.residual << "  threshold=" << check.threshold << "\n";
    out << (rep.overall_pass() ? "overall: PASS" : "overall: FAIL") << "\n";
}

} // namespace gammadil
