#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gammadil/config.hpp"
#include "gammadil/eig.hpp"
#include "gammadil/errors.hpp"
#include "gammadil/matrix.hpp"
#include "gammadil/radius.hpp"

namespace gammadil {

// ---------------------------------------------------------------------------
// Point geometry of the symmetrized bidisk
// ---------------------------------------------------------------------------

/// Both roots of z^2 - s z + p, with the numerically stable branch: the
/// larger root is taken from the quadratic formula, the other from p/z1.
inline std::pair<Complex, Complex> symmetrized_roots(Complex s, Complex p) {
    const Complex disc = std::sqrt(s * s - 4.0 * p);
    const Complex cand1 = 0.5 * (s + disc);
    const Complex cand2 = 0.5 * (s - disc);
    const Complex z1 = (std::abs(cand1) >= std::abs(cand2)) ? cand1 : cand2;
    if (std::abs(z1) == 0.0) return {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
    return {z1, p / z1};
}

/// Membership of (s, p) in the symmetrized bidisk: both roots in the
/// closed unit disk (up to tol).
inline bool point_in_gamma(Complex s, Complex p, double tol = 1e-10) {
    auto [z1, z2] = symmetrized_roots(s, p);
    return std::abs(z1) <= 1.0 + tol && std::abs(z2) <= 1.0 + tol;
}

/// Membership in the distinguished boundary: both roots unimodular.
inline bool point_in_bgamma(Complex s, Complex p, double tol = 1e-10) {
    auto [z1, z2] = symmetrized_roots(s, p);
    return std::abs(std::abs(z1) - 1.0) <= tol && std::abs(std::abs(z2) - 1.0) <= tol;
}

// ---------------------------------------------------------------------------
// GammaPair
// ---------------------------------------------------------------------------

/// A commuting pair (S, P) with cached defect data. S is the "sum"
/// coordinate (norm at most 2), P the "product" coordinate (a contraction).
/// Defect operators and orthonormal bases of their ranges are computed at
/// construction and reused by every solver and by the dilation assembly.
struct GammaPair {
    ComplexMatrix s;
    ComplexMatrix p;
    double commutation_residual = 0.0;
    ComplexMatrix defect_p;      ///< (I - P*P)^{1/2}
    ComplexMatrix defect_pstar;  ///< (I - PP*)^{1/2}
    RangeBasis basis_p;          ///< range data of defect_p
    RangeBasis basis_pstar;      ///< range data of defect_pstar

    std::size_t dim() const { return s.rows(); }
};

inline GammaPair make_gamma_pair(const ComplexMatrix& s, const ComplexMatrix& p,
                                 const Tolerances& tols = {}) {
    if (!s.is_square() || !same_shape(s, p))
        throw InvalidMatrix("pair components must be square and of equal shape");

    GammaPair pair;
    pair.s = s;
    pair.p = p;
    pair.commutation_residual = operator_norm(s * p - p * s);

    const double ns = operator_norm(s);
    const double np = operator_norm(p);
    const double commute_tol = 1e-10 * (ns + 1.0) * (np + 1.0);
    if (pair.commutation_residual > commute_tol)
        throw NotCommuting("pair components do not commute: residual " +
                           std::to_string(pair.commutation_residual));
    if (np > 1.0 + tols.eps_lin)
        throw NotContractions("product component has norm " + std::to_string(np));
    if (ns > 2.0 + tols.eps_lin)
        throw NotContractions("sum component has norm " + std::to_string(ns) +
                              " which exceeds 2");

    const ComplexMatrix id = ComplexMatrix::identity(s.rows());
    pair.defect_p = psd_sqrt(id - adjoint(p) * p, tols.eps_lin);
    pair.defect_pstar = psd_sqrt(id - p * adjoint(p), tols.eps_lin);
    pair.basis_p = range_basis(pair.defect_p, tols.rank_tol);
    pair.basis_pstar = range_basis(pair.defect_pstar, tols.rank_tol);
    return pair;
}

/// Symmetrization (T1 + T2, T1 T2) of two commuting contractions.
inline GammaPair symmetrize(const ComplexMatrix& t1, const ComplexMatrix& t2,
                            const Tolerances& tols = {}) {
    if (!t1.is_square() || !same_shape(t1, t2))
        throw InvalidMatrix("symmetrize needs square matrices of equal shape");
    const double n1 = operator_norm(t1);
    const double n2 = operator_norm(t2);
    if (n1 > 1.0 + tols.eps_lin || n2 > 1.0 + tols.eps_lin)
        throw NotContractions("inputs to symmetrize must be contractions");
    const double commute = operator_norm(t1 * t2 - t2 * t1);
    if (commute > 1e-10 * (n1 + 1.0) * (n2 + 1.0))
        throw NotCommuting("inputs to symmetrize do not commute");
    return make_gamma_pair(t1 + t2, t1 * t2, tols);
}

// ---------------------------------------------------------------------------
// Bivariate polynomials and the sampled von Neumann inequality
// ---------------------------------------------------------------------------

struct BivariateTerm {
    int deg_s = 0;
    int deg_p = 0;
    Complex coeff;
};

/// Finite-support polynomial f(s, p) = sum c * s^m p^n.
class BivariatePolynomial {
public:
    BivariatePolynomial() = default;
    explicit BivariatePolynomial(std::vector<BivariateTerm> terms) : terms_(std::move(terms)) {
        for (const BivariateTerm& t : terms_)
            if (t.deg_s < 0 || t.deg_p < 0)
                throw std::invalid_argument("polynomial degrees must be nonnegative");
    }

    const std::vector<BivariateTerm>& terms() const { return terms_; }

    Complex eval(Complex s, Complex p) const {
        Complex acc{0.0, 0.0};
        for (const BivariateTerm& t : terms_) {
            Complex v = t.coeff;
            for (int k = 0; k < t.deg_s; ++k) v *= s;
            for (int k = 0; k < t.deg_p; ++k) v *= p;
            acc += v;
        }
        return acc;
    }

    ComplexMatrix eval(const ComplexMatrix& s, const ComplexMatrix& p) const {
        int max_s = 0, max_p = 0;
        for (const BivariateTerm& t : terms_) {
            max_s = std::max(max_s, t.deg_s);
            max_p = std::max(max_p, t.deg_p);
        }
        const std::size_t n = s.rows();
        std::vector<ComplexMatrix> pow_s(static_cast<std::size_t>(max_s) + 1);
        std::vector<ComplexMatrix> pow_p(static_cast<std::size_t>(max_p) + 1);
        pow_s[0] = ComplexMatrix::identity(n);
        pow_p[0] = ComplexMatrix::identity(n);
        for (int k = 1; k <= max_s; ++k) pow_s[k] = pow_s[k - 1] * s;
        for (int k = 1; k <= max_p; ++k) pow_p[k] = pow_p[k - 1] * p;

        ComplexMatrix acc(n, n);
        for (const BivariateTerm& t : terms_)
            acc += t.coeff * (pow_s[t.deg_s] * pow_p[t.deg_p]);
        return acc;
    }

private:
    std::vector<BivariateTerm> terms_;
};

struct VonNeumannEntry {
    double lhs_norm = 0.0;     ///< ||f(S, P)||
    double sup_estimate = 0.0; ///< grid maximum of |f| over the distinguished boundary
    bool pass = false;
};

/// Samples ||f(S,P)|| against the sup of |f| on the symmetrized torus.
/// The sup of a polynomial over the whole domain is attained on the
/// distinguished boundary, so a torus grid suffices. A failing entry
/// refutes membership; a passing one is evidence only.
inline std::vector<VonNeumannEntry> check_von_neumann(const GammaPair& pair,
                                                      const std::vector<BivariatePolynomial>& polys,
                                                      std::size_t torus_grid = 64,
                                                      double tol_vn = Tolerances{}.tol_vn) {
    if (torus_grid < 16) throw std::invalid_argument("check_von_neumann: torus_grid must be >= 16");
    const double two_pi = 6.28318530717958647692;

    std::vector<VonNeumannEntry> report;
    report.reserve(polys.size());
    for (const BivariatePolynomial& f : polys) {
        VonNeumannEntry entry;
        entry.lhs_norm = operator_norm(f.eval(pair.s, pair.p));
        for (std::size_t a = 0; a < torus_grid; ++a) {
            const double ta = two_pi * static_cast<double>(a) / static_cast<double>(torus_grid);
            const Complex z1{std::cos(ta), std::sin(ta)};
            for (std::size_t b = 0; b < torus_grid; ++b) {
                const double tb = two_pi * static_cast<double>(b) / static_cast<double>(torus_grid);
                const Complex z2{std::cos(tb), std::sin(tb)};
                entry.sup_estimate =
                    std::max(entry.sup_estimate, std::abs(f.eval(z1 + z2, z1 * z2)));
            }
        }
        entry.pass = entry.lhs_norm <= entry.sup_estimate * (1.0 + tol_vn) + tol_vn;
        report.push_back(entry);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Fundamental operators
// ---------------------------------------------------------------------------

/// Fundamental operator expressed in the orthonormal basis of the defect
/// range (k x k, k = defect rank), together with how well it solves its
/// equation and its numerical radius.
struct FundamentalSolution {
    ComplexMatrix op;
    double residual = 0.0;
    double radius = 0.0;
};

/// Re-expands an operator given on a defect basis to the full space.
inline ComplexMatrix lift(const ComplexMatrix& op, const RangeBasis& basis) {
    if (basis.rank == 0) return ComplexMatrix(basis.basis.rows(), basis.basis.rows());
    return basis.basis * op * adjoint(basis.basis);
}

namespace detail {

inline FundamentalSolution solve_on_defect(const ComplexMatrix& rhs, const ComplexMatrix& defect,
                                           const RangeBasis& basis, const Tolerances& tols,
                                           const RadiusOptions& ropts) {
    FundamentalSolution sol;
    if (basis.rank == 0) {
        sol.op = ComplexMatrix(0, 0);
        sol.residual = operator_norm(rhs);
        sol.radius = 0.0;
        return sol;
    }
    const ComplexMatrix full =
        pinv_apply(defect, adjoint(pinv_apply(defect, adjoint(rhs), tols.rank_tol)), tols.rank_tol);
    sol.op = adjoint(basis.basis) * full * basis.basis;
    sol.residual = operator_norm(rhs - defect * lift(sol.op, basis) * defect);
    sol.radius = numerical_radius(sol.op, ropts.grid, ropts.refine_tol);
    return sol;
}

} // namespace detail

/// Solves S - S*P = D_P F D_P for F on the defect range of P by two-sided
/// pseudoinversion. Always returns the candidate with its residual; callers
/// probing near-boundary pairs can inspect the residual themselves.
inline FundamentalSolution solve_fundamental(const GammaPair& pair, const Tolerances& tols = {},
                                             const RadiusOptions& ropts = {}) {
    const ComplexMatrix rhs = pair.s - adjoint(pair.s) * pair.p;
    return detail::solve_on_defect(rhs, pair.defect_p, pair.basis_p, tols, ropts);
}

/// Same for the adjoint pair: S* - S P* = D_{P*} G D_{P*} on the defect
/// range of P*.
inline FundamentalSolution solve_fundamental_adjoint(const GammaPair& pair,
                                                     const Tolerances& tols = {},
                                                     const RadiusOptions& ropts = {}) {
    const ComplexMatrix rhs = adjoint(pair.s) - pair.s * adjoint(pair.p);
    return detail::solve_on_defect(rhs, pair.defect_pstar, pair.basis_pstar, tols, ropts);
}

/// Gate for callers that want a hard failure instead of a reported residual.
inline const FundamentalSolution& require_solved(const FundamentalSolution& sol, double tol_fund) {
    if (sol.residual > tol_fund)
        throw ResidualTooLarge("fundamental equation residual " + std::to_string(sol.residual));
    return sol;
}

// ---------------------------------------------------------------------------
// Identity suite relating S, P and the two fundamental operators
// ---------------------------------------------------------------------------

/// Operator-norm residuals of the nine standing identities between a pair
/// and its fundamental operators. Identities that the theory states only on
/// a defect space are right-composed with the corresponding range projector.
struct IdentityReport {
    double defect_intertwine = 0.0;       ///< P D_P = D_{P*} P
    double defect_intertwine_adj = 0.0;   ///< D_P P* = P* D_{P*}
    double defect_action_s = 0.0;         ///< D_P S = F D_P + F* D_P P
    double defect_action_s_adj = 0.0;     ///< D_{P*} S* = G D_{P*} + G* D_{P*} P*
    double fg_link_pstar = 0.0;           ///< P* G = F* P* on the defect of P*
    double fg_link_p = 0.0;               ///< P F = G* P on the defect of P
    double s_defect_split = 0.0;          ///< (S D_P - D_{P*} G P) = D_P F on the defect of P
    double s_adj_defect_split = 0.0;      ///< S* D_{P*} - D_P F P* = D_{P*} G
    double mixed_defect_relation = 0.0;   ///< (F* D_P D_{P*} - F P*) = D_P D_{P*} G - P* G*

    std::array<std::pair<const char*, double>, 9> items() const {
        return {{{"defect_intertwine", defect_intertwine},
                 {"defect_intertwine_adj", defect_intertwine_adj},
                 {"defect_action_s", defect_action_s},
                 {"defect_action_s_adj", defect_action_s_adj},
                 {"fg_link_pstar", fg_link_pstar},
                 {"fg_link_p", fg_link_p},
                 {"s_defect_split", s_defect_split},
                 {"s_adj_defect_split", s_adj_defect_split},
                 {"mixed_defect_relation", mixed_defect_relation}}};
    }

    double max_residual() const {
        double m = 0.0;
        for (const auto& [name, r] : items()) m = std::max(m, r);
        return m;
    }
};

inline IdentityReport identity_suite(const GammaPair& pair, const FundamentalSolution& f,
                                     const FundamentalSolution& g) {
    const ComplexMatrix& s = pair.s;
    const ComplexMatrix& p = pair.p;
    const ComplexMatrix sa = adjoint(s);
    const ComplexMatrix pa = adjoint(p);
    const ComplexMatrix& dp = pair.defect_p;
    const ComplexMatrix& dq = pair.defect_pstar;
    const ComplexMatrix& proj_p = pair.basis_p.projector;
    const ComplexMatrix& proj_q = pair.basis_pstar.projector;
    const ComplexMatrix fl = lift(f.op, pair.basis_p);
    const ComplexMatrix gl = lift(g.op, pair.basis_pstar);
    const ComplexMatrix fla = adjoint(fl);
    const ComplexMatrix gla = adjoint(gl);

    IdentityReport rep;
    rep.defect_intertwine = operator_norm(p * dp - dq * p);
    rep.defect_intertwine_adj = operator_norm(dp * pa - pa * dq);
    rep.defect_action_s = operator_norm(dp * s - fl * dp - fla * dp * p);
    rep.defect_action_s_adj = operator_norm(dq * sa - gl * dq - gla * dq * pa);
    rep.fg_link_pstar = operator_norm((pa * gl - fla * pa) * proj_q);
    rep.fg_link_p = operator_norm((p * fl - gla * p) * proj_p);
    rep.s_defect_split = operator_norm((s * dp - dq * gl * p) * proj_p - dp * fl);
    rep.s_adj_defect_split = operator_norm(sa * dq - dp * fl * pa - dq * gl);
    rep.mixed_defect_relation =
        operator_norm((fla * dp * dq - fl * pa - dp * dq * gl + pa * gla) * proj_q);
    return rep;
}

} // namespace gammadil
