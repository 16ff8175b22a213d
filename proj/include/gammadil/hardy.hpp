#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gammadil/config.hpp"
#include "gammadil/errors.hpp"
#include "gammadil/gamma.hpp"
#include "gammadil/matrix.hpp"

namespace gammadil {

// ---------------------------------------------------------------------------
// Truncated coefficient grids on the bidisk
//
// A CoeffGrid holds the coefficients a_ij of sum a_ij z1^i z2^j for
// 0 <= i, j < d. Monomials are orthonormal, so the norm is the plain l2
// norm of the coefficients. The multiplication pair acts by index shifts;
// anything shifted past the grid edge is discarded.
// ---------------------------------------------------------------------------

struct CoeffGrid {
    std::size_t d = 0;
    std::vector<Complex> a; ///< row-major, a[i*d + j] = coefficient of z1^i z2^j

    CoeffGrid() = default;
    explicit CoeffGrid(std::size_t degree_bound)
        : d(degree_bound), a(degree_bound * degree_bound, Complex{0.0, 0.0}) {}

    static CoeffGrid monomial(std::size_t degree_bound, std::size_t i, std::size_t j) {
        CoeffGrid g(degree_bound);
        g.at(i, j) = 1.0;
        return g;
    }

    Complex& at(std::size_t i, std::size_t j) { return a[i * d + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return a[i * d + j]; }

    double norm_sq() const {
        double s = 0.0;
        for (const Complex& z : a) s += std::norm(z);
        return s;
    }
};

inline Complex inner(const CoeffGrid& f, const CoeffGrid& g) {
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < f.a.size(); ++k) s += f.a[k] * std::conj(g.a[k]);
    return s;
}

inline double max_abs_diff(const CoeffGrid& f, const CoeffGrid& g) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.a.size(); ++k) s = std::max(s, std::abs(f.a[k] - g.a[k]));
    return s;
}

inline CoeffGrid operator+(const CoeffGrid& f, const CoeffGrid& g) {
    CoeffGrid out = f;
    for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] += g.a[k];
    return out;
}

inline CoeffGrid operator-(const CoeffGrid& f, const CoeffGrid& g) {
    CoeffGrid out = f;
    for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] -= g.a[k];
    return out;
}

/// Multiplication by z1 + z2: out(i,j) = a(i-1,j) + a(i,j-1).
inline CoeffGrid mult_sum(const CoeffGrid& g) {
    CoeffGrid out(g.d);
    for (std::size_t i = 0; i < g.d; ++i)
        for (std::size_t j = 0; j < g.d; ++j) {
            Complex v{0.0, 0.0};
            if (i > 0) v += g.at(i - 1, j);
            if (j > 0) v += g.at(i, j - 1);
            out.at(i, j) = v;
        }
    return out;
}

/// Multiplication by z1 z2: out(i,j) = a(i-1,j-1).
inline CoeffGrid mult_prod(const CoeffGrid& g) {
    CoeffGrid out(g.d);
    for (std::size_t i = 1; i < g.d; ++i)
        for (std::size_t j = 1; j < g.d; ++j) out.at(i, j) = g.at(i - 1, j - 1);
    return out;
}

/// Adjoint of mult_sum: out(i,j) = a(i+1,j) + a(i,j+1).
inline CoeffGrid mult_sum_adj(const CoeffGrid& g) {
    CoeffGrid out(g.d);
    for (std::size_t i = 0; i < g.d; ++i)
        for (std::size_t j = 0; j < g.d; ++j) {
            Complex v{0.0, 0.0};
            if (i + 1 < g.d) v += g.at(i + 1, j);
            if (j + 1 < g.d) v += g.at(i, j + 1);
            out.at(i, j) = v;
        }
    return out;
}

/// Adjoint of mult_prod: out(i,j) = a(i+1,j+1).
inline CoeffGrid mult_prod_adj(const CoeffGrid& g) {
    CoeffGrid out(g.d);
    for (std::size_t i = 0; i + 1 < g.d; ++i)
        for (std::size_t j = 0; j + 1 < g.d; ++j) out.at(i, j) = g.at(i + 1, j + 1);
    return out;
}

inline CoeffGrid symmetric_part(const CoeffGrid& g) {
    CoeffGrid out(g.d);
    for (std::size_t i = 0; i < g.d; ++i)
        for (std::size_t j = 0; j < g.d; ++j) out.at(i, j) = 0.5 * (g.at(i, j) + g.at(j, i));
    return out;
}

inline CoeffGrid antisymmetric_part(const CoeffGrid& g) {
    CoeffGrid out(g.d);
    for (std::size_t i = 0; i < g.d; ++i)
        for (std::size_t j = 0; j < g.d; ++j) out.at(i, j) = 0.5 * (g.at(i, j) - g.at(j, i));
    return out;
}

inline bool is_symmetric(const CoeffGrid& g) {
    for (std::size_t i = 0; i < g.d; ++i)
        for (std::size_t j = i + 1; j < g.d; ++j)
            if (g.at(i, j) != g.at(j, i)) return false;
    return true;
}

inline bool is_antisymmetric(const CoeffGrid& g) {
    for (std::size_t i = 0; i < g.d; ++i) {
        if (g.at(i, i) != Complex{0.0, 0.0}) return false;
        for (std::size_t j = i + 1; j < g.d; ++j)
            if (g.at(i, j) != -g.at(j, i)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// The hook-shaped defect of the adjoint product shift
//
// The product shift is an isometry, so the defect of its adjoint is the
// projection onto the complement of its range: the first row and column of
// the grid. A DefectVector stores exactly those entries, with row[0] and
// col[0] both aliasing the (0,0) coefficient.
// ---------------------------------------------------------------------------

struct DefectVector {
    std::size_t d = 0;
    std::vector<Complex> row; ///< row[j] = a_{0j}; row[0] is the (0,0) entry
    std::vector<Complex> col; ///< col[j] = a_{j0}; col[0] == row[0]

    DefectVector() = default;
    explicit DefectVector(std::size_t degree_bound)
        : d(degree_bound), row(degree_bound, Complex{0.0, 0.0}),
          col(degree_bound, Complex{0.0, 0.0}) {}

    double norm_sq() const {
        double s = std::norm(row[0]);
        for (std::size_t j = 1; j < d; ++j) s += std::norm(row[j]) + std::norm(col[j]);
        return s;
    }
};

/// Projection of a grid onto the defect of the adjoint product shift.
inline DefectVector defect_project(const CoeffGrid& g) {
    DefectVector v(g.d);
    for (std::size_t j = 0; j < g.d; ++j) {
        v.row[j] = g.at(0, j);
        v.col[j] = g.at(j, 0);
    }
    return v;
}

inline CoeffGrid embed(const DefectVector& v) {
    CoeffGrid g(v.d);
    for (std::size_t j = 0; j < v.d; ++j) {
        g.at(0, j) = v.row[j];
        g.at(j, 0) = v.col[j];
    }
    return g;
}

/// The closed-form fundamental operator of the adjoint pair on hooks:
/// the (0,0) entry becomes a_{10} + a_{01} and both arms shift inward.
inline DefectVector fundamental_apply(const DefectVector& v) {
    DefectVector out(v.d);
    if (v.d >= 2) {
        const Complex head = v.col[1] + v.row[1];
        out.row[0] = head;
        out.col[0] = head;
        for (std::size_t j = 1; j + 1 < v.d; ++j) {
            out.row[j] = v.row[j + 1];
            out.col[j] = v.col[j + 1];
        }
    }
    return out;
}

/// Its adjoint: the (0,0) entry spills into both arms and everything
/// shifts outward; the new (0,0) entry is zero.
inline DefectVector fundamental_apply_adj(const DefectVector& v) {
    DefectVector out(v.d);
    for (std::size_t j = 0; j + 1 < v.d; ++j) {
        out.row[j + 1] = v.row[j];
        out.col[j + 1] = v.col[j];
    }
    return out;
}

/// Restriction to symmetric hooks (both arms equal): head becomes twice
/// the first arm entry.
inline DefectVector fundamental_sym_apply(const DefectVector& v) {
    for (std::size_t j = 1; j < v.d; ++j)
        if (v.row[j] != v.col[j]) throw SymmetryViolated("hook is not symmetric");
    DefectVector out(v.d);
    if (v.d >= 2) {
        out.row[0] = 2.0 * v.row[1];
        out.col[0] = out.row[0];
        for (std::size_t j = 1; j + 1 < v.d; ++j) {
            out.row[j] = v.row[j + 1];
            out.col[j] = v.col[j + 1];
        }
    }
    return out;
}

/// Restriction to antisymmetric hooks (arms negated, zero head).
inline DefectVector fundamental_anti_apply(const DefectVector& v) {
    if (v.row[0] != Complex{0.0, 0.0}) throw SymmetryViolated("antisymmetric hook has a head");
    for (std::size_t j = 1; j < v.d; ++j)
        if (v.col[j] != -v.row[j]) throw SymmetryViolated("hook is not antisymmetric");
    DefectVector out(v.d);
    for (std::size_t j = 1; j + 1 < v.d; ++j) {
        out.row[j] = v.row[j + 1];
        out.col[j] = v.col[j + 1];
    }
    return out;
}

// ---------------------------------------------------------------------------
// The model transform onto vector-valued one-variable coefficients
// ---------------------------------------------------------------------------

/// Coefficient sequence of the unitary onto the one-variable model:
/// g_k = defect_project(P*^k f). For a degree-bounded grid every term with
/// k >= d vanishes, so the truncation is exact and the transform preserves
/// the norm on the nose.
inline std::vector<DefectVector> model_coefficients(const CoeffGrid& f, std::size_t n_terms) {
    if (n_terms > f.d)
        throw std::invalid_argument("model_coefficients: terms beyond the degree bound vanish");
    std::vector<DefectVector> out;
    out.reserve(n_terms);
    CoeffGrid cur = f;
    for (std::size_t k = 0; k < n_terms; ++k) {
        out.push_back(defect_project(cur));
        if (k + 1 < n_terms) cur = mult_prod_adj(cur);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exactness verifiers
//
// Every identity below is an equality of operators in the infinite model.
// On the truncated grid it holds exactly (not just to a tolerance) as long
// as the support of the test vector cannot shift off the grid; each
// verifier sweeps the monomial basis on such an interior window and also
// reports the unrestricted residual for transparency.
// ---------------------------------------------------------------------------

struct ExactnessReport {
    double interior_residual = 0.0;
    double full_residual = 0.0;
};

/// Fundamental equation of the adjoint pair against the closed form:
/// S* - S P* applied to basis grids versus defect-project, apply, embed.
inline ExactnessReport verify_fundamental_equation(std::size_t d) {
    if (d < 3) throw std::invalid_argument("grid bound must be at least 3");
    ExactnessReport rep;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const CoeffGrid e = CoeffGrid::monomial(d, i, j);
            const CoeffGrid lhs = mult_sum_adj(e) - mult_sum(mult_prod_adj(e));
            const CoeffGrid rhs = embed(fundamental_apply(defect_project(e)));
            const double res = max_abs_diff(lhs, rhs);
            rep.full_residual = std::max(rep.full_residual, res);
            if (i + j + 2 <= d) rep.interior_residual = std::max(rep.interior_residual, res);
        }
    return rep;
}

/// Same equation restricted to symmetric grids and the symmetric closed form.
inline ExactnessReport verify_fundamental_equation_sym(std::size_t d) {
    if (d < 3) throw std::invalid_argument("grid bound must be at least 3");
    ExactnessReport rep;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            CoeffGrid f = CoeffGrid::monomial(d, i, j);
            if (i != j) f.at(j, i) = 1.0;
            const CoeffGrid lhs = mult_sum_adj(f) - mult_sum(mult_prod_adj(f));
            const CoeffGrid rhs = embed(fundamental_sym_apply(defect_project(f)));
            const double res = max_abs_diff(lhs, rhs);
            rep.full_residual = std::max(rep.full_residual, res);
            if (i + j + 2 <= d) rep.interior_residual = std::max(rep.interior_residual, res);
        }
    return rep;
}

/// Same equation restricted to antisymmetric grids.
inline ExactnessReport verify_fundamental_equation_anti(std::size_t d) {
    if (d < 3) throw std::invalid_argument("grid bound must be at least 3");
    ExactnessReport rep;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            CoeffGrid f = CoeffGrid::monomial(d, i, j);
            f.at(j, i) = -1.0;
            const CoeffGrid lhs = mult_sum_adj(f) - mult_sum(mult_prod_adj(f));
            const CoeffGrid rhs = embed(fundamental_anti_apply(defect_project(f)));
            const double res = max_abs_diff(lhs, rhs);
            rep.full_residual = std::max(rep.full_residual, res);
            if (i + j + 2 <= d) rep.interior_residual = std::max(rep.interior_residual, res);
        }
    return rep;
}

/// Intertwining and isometry checks for the model transform. On interior
/// monomials: the transform preserves the norm term by term, transforms of
/// prod-multiplied grids are the shifted sequences, and transforms of
/// sum-multiplied grids are the sequences hit by the adjoint-plus-shifted
/// fundamental operator.
struct ModelEquivalenceReport {
    double isometry_defect = 0.0;
    double prod_intertwine = 0.0;
    double sum_intertwine = 0.0;

    double max_residual() const {
        return std::max({isometry_defect, prod_intertwine, sum_intertwine});
    }
};

inline ModelEquivalenceReport verify_model_equivalence(std::size_t d, std::size_t n_terms) {
    if (d < 4) throw std::invalid_argument("grid bound must be at least 4");
    if (n_terms < (d - 1) / 2 || n_terms > d)
        throw std::invalid_argument("n_terms must cover the interior window and stay within d");

    ModelEquivalenceReport rep;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (i + j + 3 > d) continue; // keep one application of mult_sum exact
            const CoeffGrid e = CoeffGrid::monomial(d, i, j);
            const auto g = model_coefficients(e, n_terms);

            double total = 0.0;
            for (const DefectVector& gk : g) total += gk.norm_sq();
            rep.isometry_defect = std::max(rep.isometry_defect, std::abs(total - e.norm_sq()));

            const auto gp = model_coefficients(mult_prod(e), n_terms);
            rep.prod_intertwine =
                std::max(rep.prod_intertwine, max_abs_diff(embed(gp[0]), CoeffGrid(d)));
            for (std::size_t k = 1; k < n_terms; ++k)
                rep.prod_intertwine = std::max(
                    rep.prod_intertwine, max_abs_diff(embed(gp[k]), embed(g[k - 1])));

            const auto gs = model_coefficients(mult_sum(e), n_terms);
            for (std::size_t k = 0; k < n_terms; ++k) {
                CoeffGrid expect = embed(fundamental_apply_adj(g[k]));
                if (k > 0) expect = expect + embed(fundamental_apply(g[k - 1]));
                rep.sum_intertwine =
                    std::max(rep.sum_intertwine, max_abs_diff(embed(gs[k]), expect));
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Cross-check against the generic fundamental-equation solver
// ---------------------------------------------------------------------------

namespace detail {

/// Materialises a grid operator as a matrix on the vectorised grid space.
template <typename Op>
inline ComplexMatrix grid_operator_matrix(std::size_t d, Op&& op) {
    const std::size_t n = d * d;
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const CoeffGrid image = op(CoeffGrid::monomial(d, i, j));
            const std::size_t col = i * d + j;
            for (std::size_t k = 0; k < n; ++k) m(k, col) = image.a[k];
        }
    return m;
}

/// Matrix of a grid operator compressed to the span of given grid columns.
template <typename Op>
inline ComplexMatrix compressed_operator(const ComplexMatrix& basis_cols, std::size_t d, Op&& op) {
    ComplexMatrix images(basis_cols.rows(), basis_cols.cols());
    for (std::size_t c = 0; c < basis_cols.cols(); ++c) {
        CoeffGrid g(d);
        for (std::size_t k = 0; k < g.a.size(); ++k) g.a[k] = basis_cols(k, c);
        const CoeffGrid image = op(g);
        for (std::size_t k = 0; k < image.a.size(); ++k) images(k, c) = image.a[k];
    }
    return adjoint(basis_cols) * images;
}

} // namespace detail

/// Residuals of the generic pseudoinverse solver against the closed-form
/// fundamental operators, on the full grid and on the two symmetry-reduced
/// subspaces. Both routes are computed independently: the solver sees only
/// the materialised shift matrices, the closed forms only the hook shifts.
struct SolverCrosscheckReport {
    double full_residual = 0.0;
    double sym_residual = 0.0;
    double anti_residual = 0.0;

    double max_residual() const { return std::max({full_residual, sym_residual, anti_residual}); }
};

inline SolverCrosscheckReport crosscheck_fundamental_solver(std::size_t d,
                                                            const Tolerances& tols = {}) {
    if (d < 3) throw std::invalid_argument("grid bound must be at least 3");
    SolverCrosscheckReport rep;

    // Full grid.
    {
        const ComplexMatrix s_mat =
            detail::grid_operator_matrix(d, [](const CoeffGrid& g) { return mult_sum(g); });
        const ComplexMatrix p_mat =
            detail::grid_operator_matrix(d, [](const CoeffGrid& g) { return mult_prod(g); });
        const GammaPair pair = make_gamma_pair(s_mat, p_mat, tols);
        const FundamentalSolution g = solve_fundamental_adjoint(pair, tols);
        const ComplexMatrix lifted = lift(g.op, pair.basis_pstar);
        const ComplexMatrix closed = detail::grid_operator_matrix(d, [](const CoeffGrid& x) {
            return embed(fundamental_apply(defect_project(x)));
        });

        std::vector<char> interior(d * d, 0);
        interior[0] = 1;
        for (std::size_t j = 1; j + 1 < d; ++j) {
            interior[j] = 1;     // (0, j)
            interior[j * d] = 1; // (j, 0)
        }
        rep.full_residual = operator_norm(mask_columns(lifted - closed, interior));
    }

    // Symmetry-reduced subspaces share the same skeleton.
    const auto reduced = [&](bool symmetric) {
        std::vector<std::pair<std::size_t, std::size_t>> index;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = symmetric ? i : i + 1; j < d; ++j) index.emplace_back(i, j);

        ComplexMatrix cols(d * d, index.size());
        const double half = std::sqrt(0.5);
        for (std::size_t c = 0; c < index.size(); ++c) {
            const auto [i, j] = index[c];
            if (symmetric && i == j) {
                cols(i * d + j, c) = 1.0;
            } else {
                cols(i * d + j, c) = half;
                cols(j * d + i, c) = symmetric ? half : -half;
            }
        }

        const ComplexMatrix s_red =
            detail::compressed_operator(cols, d, [](const CoeffGrid& g) { return mult_sum(g); });
        const ComplexMatrix p_red =
            detail::compressed_operator(cols, d, [](const CoeffGrid& g) { return mult_prod(g); });
        const GammaPair pair = make_gamma_pair(s_red, p_red, tols);
        const FundamentalSolution g = solve_fundamental_adjoint(pair, tols);
        const ComplexMatrix lifted = lift(g.op, pair.basis_pstar);

        const ComplexMatrix closed = detail::compressed_operator(cols, d, [&](const CoeffGrid& x) {
            const DefectVector hook = defect_project(x);
            return embed(symmetric ? fundamental_sym_apply(hook) : fundamental_anti_apply(hook));
        });

        std::vector<char> interior(index.size(), 0);
        for (std::size_t c = 0; c < index.size(); ++c) {
            const auto [i, j] = index[c];
            if (i == 0 && j + 1 < d) interior[c] = 1; // hooks clear of the edge
        }
        return operator_norm(mask_columns(lifted - closed, interior));
    };

    rep.sym_residual = reduced(true);
    rep.anti_residual = reduced(false);
    return rep;
}

} // namespace gammadil
