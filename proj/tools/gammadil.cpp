// Command-line surface: seeded instance generation, the full
// solve -> dilate -> verify pipeline, and the closed-form coefficient-grid
// suite. Reports are JSON on stdout with a human summary on stderr.
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 usage/IO error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gammadil/gammadil.hpp"

namespace {

using namespace gammadil;

struct RunConfig {
    std::uint64_t seed = 1;
    std::size_t size = 4;
    std::size_t depth = 10;
    std::size_t window = 6;
    std::size_t grid_d = 6;
    std::size_t torus_grid = 64;
    std::size_t theta_grid = 256;
    Tolerances tols;
    std::string input;
    bool human = false;
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

bool set_tolerance(Tolerances& tols, const std::string& name, double value) {
    if (name == "tol_fund") tols.tol_fund = value;
    else if (name == "tol_dil") tols.tol_dil = value;
    else if (name == "tol_w") tols.tol_w = value;
    else if (name == "tol_commute") tols.tol_commute = value;
    else if (name == "tol_vn") tols.tol_vn = value;
    else if (name == "rank_tol") tols.rank_tol = value;
    else if (name == "eps_lin") tols.eps_lin = value;
    else return false;
    return true;
}

int apply_tolerance_overrides(RunConfig& cfg, const std::vector<std::string>& entries) {
    for (const std::string& entry : entries) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --tol expects <name>=<value>, got '" << entry << "'\n";
            return 2;
        }
        const std::string name = entry.substr(0, eq);
        double value = 0.0;
        try {
            value = std::stod(entry.substr(eq + 1));
        } catch (const std::exception&) {
            std::cerr << "error: --tol value in '" << entry << "' is not a number\n";
            return 2;
        }
        if (!(value > 0.0)) {
            std::cerr << "error: tolerance '" << name << "' must be positive\n";
            return 2;
        }
        if (!set_tolerance(cfg.tols, name, value)) {
            std::cerr << "error: unknown tolerance '" << name << "'\n";
            return 2;
        }
    }
    return 0;
}

// Flat key=value config file; command-line flags win over file entries.
int apply_config_file(RunConfig& cfg, CLI::App* sub, const std::string& path,
                      const std::vector<std::string>& tol_entries) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open config file '" << path << "'\n";
        return 2;
    }

    auto tol_given_on_cli = [&tol_entries](const std::string& name) {
        for (const std::string& entry : tol_entries)
            if (entry.rfind(name + "=", 0) == 0) return true;
        return false;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: " << path << ":" << lineno << ": expected key=value\n";
            return 2;
        }
        auto trim = [](std::string s) {
            const std::size_t a = s.find_first_not_of(" \t\r");
            const std::size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        try {
            if (key == "seed") {
                if (!sub->count("--seed")) cfg.seed = std::stoull(value);
            } else if (key == "size") {
                if (!sub->count("--size")) cfg.size = std::stoul(value);
            } else if (key == "depth") {
                if (!sub->count("--depth")) cfg.depth = std::stoul(value);
            } else if (key == "window") {
                if (!sub->count("--window")) cfg.window = std::stoul(value);
            } else if (key == "grid-d" || key == "grid_d") {
                if (!sub->count("--grid-d")) cfg.grid_d = std::stoul(value);
            } else if (key == "torus-grid" || key == "torus_grid") {
                if (!sub->count("--torus-grid")) cfg.torus_grid = std::stoul(value);
            } else if (key == "theta-grid" || key == "theta_grid") {
                if (!sub->count("--theta-grid")) cfg.theta_grid = std::stoul(value);
            } else if (key == "input") {
                if (!sub->count("--input")) cfg.input = value;
            } else if (key == "human") {
                if (!sub->count("--human")) cfg.human = (value == "1" || value == "true");
            } else {
                const double v = std::stod(value);
                if (!(v > 0.0)) {
                    std::cerr << "error: tolerance '" << key << "' must be positive\n";
                    return 2;
                }
                if (tol_given_on_cli(key)) continue;
                if (!set_tolerance(cfg.tols, key, v)) {
                    std::cerr << "error: " << path << ":" << lineno << ": unknown key '" << key
                              << "'\n";
                    return 2;
                }
            }
        } catch (const std::exception&) {
            std::cerr << "error: " << path << ":" << lineno << ": bad value for '" << key << "'\n";
            return 2;
        }
    }
    return 0;
}

int emit(const VerificationReport& rep, bool human) {
    if (human) {
        print_human(rep, std::cout);
    } else {
        std::cout << report_to_json(rep).dump(2) << "\n";
        print_human(rep, std::cerr);
    }
    return rep.overall_pass() ? 0 : 1;
}

int run_gen(const RunConfig& cfg) {
    if (cfg.size == 0) {
        std::cerr << "error: --size must be at least 1\n";
        return 2;
    }
    const GammaPair pair = random_gamma_pair(cfg.seed, cfg.size, cfg.tols);
    std::cout << pair_to_json(pair).dump(2) << "\n";
    return 0;
}

bool is_diagonal(const ComplexMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != Complex{0.0, 0.0}) return false;
    return true;
}

int run_verify(const RunConfig& cfg) {
    if (cfg.input.empty()) {
        std::cerr << "error: verify needs --input <path>\n";
        return 2;
    }
    if (cfg.window + 2 > cfg.depth) {
        std::cerr << "error: window must not exceed depth - 2\n";
        return 2;
    }

    json doc;
    ComplexMatrix s, p;
    try {
        std::ifstream in(cfg.input);
        if (!in) {
            std::cerr << "error: cannot open '" << cfg.input << "'\n";
            return 2;
        }
        in >> doc;
        std::tie(s, p) = pair_matrices_from_json(doc);
    } catch (const std::exception& e) {
        std::cerr << "error: cannot parse pair: " << e.what() << "\n";
        return 2;
    }

    VerificationReport rep;
    rep.instance = "pair n=" + std::to_string(s.rows()) + " from " + cfg.input;
    const Timer total;

    // For diagonal pairs membership is decidable pointwise; fail fast on a
    // point outside the domain instead of reporting solver residuals that
    // mean nothing there.
    if (is_diagonal(s) && is_diagonal(p)) {
        bool inside = true;
        for (std::size_t i = 0; i < s.rows(); ++i)
            inside = inside && point_in_gamma(s(i, i), p(i, i), cfg.tols.tol_fund);
        rep.add_flag("gamma_membership", inside);
        if (!inside) {
            rep.timings_ms["total"] = total.ms();
            return emit(rep, cfg.human);
        }
    }

    try {
        const Timer t_solve;
        const GammaPair pair = make_gamma_pair(s, p, cfg.tols);
        const RadiusOptions ropts{cfg.theta_grid, 1e-10};
        const FundamentalSolution f = solve_fundamental(pair, cfg.tols, ropts);
        const FundamentalSolution g = solve_fundamental_adjoint(pair, cfg.tols, ropts);
        rep.add("fundamental/residual", f.residual, cfg.tols.tol_fund);
        rep.add("fundamental/radius", f.radius, 1.0 + cfg.tols.tol_w);
        rep.add("fundamental_adjoint/residual", g.residual, cfg.tols.tol_fund);
        rep.add("fundamental_adjoint/radius", g.radius, 1.0 + cfg.tols.tol_w);
        rep.timings_ms["solve"] = t_solve.ms();

        const Timer t_ident;
        const IdentityReport idrep = identity_suite(pair, f, g);
        for (const auto& [name, residual] : idrep.items())
            rep.add(std::string("identity/") + name, residual, cfg.tols.tol_fund);
        rep.timings_ms["identities"] = t_ident.ms();

        const Timer t_dil;
        const TruncatedDilation dil = build_dilation(pair, f, g, cfg.depth);
        const std::size_t m_max = (cfg.depth - 1) / 2;
        rep.add("dilation/compression", verify_dilation_identity(dil, pair, m_max, m_max),
                cfg.tols.tol_dil);
        const GammaUnitaryReport gu = verify_gamma_unitary(dil, cfg.window);
        rep.add("unitary/commute", gu.commute, cfg.tols.tol_dil);
        rep.add("unitary/sum_adjoint_relation", gu.sum_adjoint_relation, cfg.tols.tol_dil);
        rep.add("unitary/prod_unitarity", gu.prod_unitarity, cfg.tols.tol_dil);
        rep.add("unitary/sum_norm", gu.sum_norm, 2.0 + cfg.tols.tol_dil);
        const GammaIsometryReport gi = verify_gamma_isometry(dil, cfg.window);
        rep.add("isometry/prod_isometry", gi.prod_isometry, cfg.tols.tol_dil);
        rep.add("isometry/commute", gi.commute, cfg.tols.tol_dil);
        rep.add("isometry/sum_adjoint_relation", gi.sum_adjoint_relation, cfg.tols.tol_dil);

        const SpanReport span = minimality_span(dil);
        const bool full_rank =
            pair.basis_p.rank == pair.dim() && pair.basis_pstar.rank == pair.dim();
        const double deficit = static_cast<double>(span.full_dim - span.span_dim);
        // With rank-deficient defects some slots can be legitimately
        // unreachable, so the deficit is informational there.
        rep.add("minimality/span_deficit", deficit,
                full_rank ? 0.0 : static_cast<double>(span.full_dim));
        rep.timings_ms["dilation"] = t_dil.ms();
    } catch (const Error& e) {
        std::cerr << "verification aborted: " << e.what() << "\n";
        rep.add_flag("pipeline_error", false);
    }

    rep.timings_ms["total"] = total.ms();
    return emit(rep, cfg.human);
}

int run_hardy(const RunConfig& cfg) {
    if (cfg.grid_d < 4) {
        std::cerr << "error: --grid-d must be at least 4\n";
        return 2;
    }

    VerificationReport rep;
    rep.instance = "coefficient grid d=" + std::to_string(cfg.grid_d);
    const Timer total;
    const std::size_t d = cfg.grid_d;
    const double exact = cfg.tols.eps_lin;

    const Timer t_closed;
    const ExactnessReport full = verify_fundamental_equation(d);
    rep.add("closed_form/interior", full.interior_residual, exact);
    rep.add("closed_form/full_grid", full.full_residual, exact);
    const ExactnessReport sym = verify_fundamental_equation_sym(d);
    rep.add("closed_form_sym/interior", sym.interior_residual, exact);
    rep.add("closed_form_sym/full_grid", sym.full_residual, exact);
    const ExactnessReport anti = verify_fundamental_equation_anti(d);
    rep.add("closed_form_anti/interior", anti.interior_residual, exact);
    rep.add("closed_form_anti/full_grid", anti.full_residual, exact);
    rep.timings_ms["closed_form"] = t_closed.ms();

    const Timer t_model;
    const ModelEquivalenceReport model = verify_model_equivalence(d, d - 2);
    rep.add("model/isometry", model.isometry_defect, exact);
    rep.add("model/prod_intertwine", model.prod_intertwine, exact);
    rep.add("model/sum_intertwine", model.sum_intertwine, exact);
    rep.timings_ms["model"] = t_model.ms();

    const Timer t_cross;
    const SolverCrosscheckReport cross = crosscheck_fundamental_solver(d, cfg.tols);
    rep.add("crosscheck/full", cross.full_residual, cfg.tols.tol_fund);
    rep.add("crosscheck/sym", cross.sym_residual, cfg.tols.tol_fund);
    rep.add("crosscheck/anti", cross.anti_residual, cfg.tols.tol_fund);
    rep.timings_ms["crosscheck"] = t_cross.ms();

    rep.timings_ms["total"] = total.ms();
    return emit(rep, cfg.human);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for contractive operator pairs on the symmetrized bidisk"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> tol_entries;
    std::string config_path;
    bool want_json = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat key=value config file; flags win");
        sub->add_option("--seed", cfg.seed, "64-bit generator seed");
        sub->add_option("--size", cfg.size, "dimension of generated pairs");
        sub->add_option("--depth", cfg.depth, "tail slots kept per defect space");
        sub->add_option("--window", cfg.window, "verification window (at most depth-2)");
        sub->add_option("--grid-d", cfg.grid_d, "coefficient-grid degree bound");
        sub->add_option("--torus-grid", cfg.torus_grid, "samples per torus direction");
        sub->add_option("--theta-grid", cfg.theta_grid, "angle samples for the numerical radius");
        sub->add_option("--tol", tol_entries, "tolerance override <name>=<value>")
            ->take_all();
        sub->add_option("--input", cfg.input, "input JSON path");
        sub->add_flag("--human", cfg.human, "human-readable report on stdout");
        sub->add_flag("--json", want_json, "JSON report on stdout (default)");
    };

    CLI::App* gen = app.add_subcommand("gen", "emit a seeded commuting pair as JSON");
    CLI::App* verify = app.add_subcommand("verify", "run the full dilation pipeline on a pair");
    CLI::App* hardy = app.add_subcommand("hardy", "exact coefficient-grid suite");
    add_common(gen);
    add_common(verify);
    add_common(hardy);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* active = gen->parsed() ? gen : (verify->parsed() ? verify : hardy);
    if (!config_path.empty()) {
        if (const int code = apply_config_file(cfg, active, config_path, tol_entries); code != 0)
            return code;
    }
    if (want_json) cfg.human = false;
    if (const int code = apply_tolerance_overrides(cfg, tol_entries); code != 0) return code;

    try {
        if (gen->parsed()) return run_gen(cfg);
        if (verify->parsed()) return run_verify(cfg);
        if (hardy->parsed()) return run_hardy(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
