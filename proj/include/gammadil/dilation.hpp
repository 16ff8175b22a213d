#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gammadil/config.hpp"
#include "gammadil/eig.hpp"
#include "gammadil/errors.hpp"
#include "gammadil/gamma.hpp"
#include "gammadil/matrix.hpp"

namespace gammadil {

// ---------------------------------------------------------------------------
// Truncated dilation space
//
// The ambient space is H ++ N copies of the defect range of P ++ N copies of
// the defect range of P*. Tail slots store coordinates in the orthonormal
// defect bases, so their width is the defect rank, not the dimension of H.
// Truncation is a hard cut: whatever an operator pushes past the deepest
// slot is discarded, so identities that hold in the infinite model hold
// exactly on windows that keep away from the cut.
// ---------------------------------------------------------------------------

struct TruncatedDilation {
    std::size_t depth = 0;      ///< tail slots kept per defect space
    std::size_t dim_h = 0;
    std::size_t rank_p = 0;     ///< defect rank of P
    std::size_t rank_pstar = 0; ///< defect rank of P*

    ComplexMatrix iso_sum;  ///< dilation of S on H ++ inbound tail (lower bidiagonal in F)
    ComplexMatrix iso_prod; ///< minimal isometric dilation of P on the same space
    ComplexMatrix uni_sum;  ///< extension of iso_sum to the unitary space
    ComplexMatrix uni_prod; ///< minimal unitary dilation of P

    ComplexMatrix embed_h;  ///< isometric injection of H into the unitary space

    std::size_t dim_iso() const { return dim_h + depth * rank_p; }
    std::size_t dim_full() const { return dim_iso() + depth * rank_pstar; }

    std::size_t p_slot(std::size_t i) const { return dim_h + i * rank_p; }
    std::size_t q_slot(std::size_t i) const { return dim_iso() + i * rank_pstar; }

    /// 0/1 mask over the full space: H plus the first w slots of each tail.
    std::vector<char> window_mask(std::size_t w) const {
        std::vector<char> mask(dim_full(), 0);
        for (std::size_t i = 0; i < dim_h; ++i) mask[i] = 1;
        for (std::size_t s = 0; s < std::min(w, depth); ++s) {
            for (std::size_t i = 0; i < rank_p; ++i) mask[p_slot(s) + i] = 1;
            for (std::size_t i = 0; i < rank_pstar; ++i) mask[q_slot(s) + i] = 1;
        }
        return mask;
    }

    std::vector<char> window_mask_iso(std::size_t w) const {
        std::vector<char> mask(dim_iso(), 0);
        for (std::size_t i = 0; i < dim_h; ++i) mask[i] = 1;
        for (std::size_t s = 0; s < std::min(w, depth); ++s)
            for (std::size_t i = 0; i < rank_p; ++i) mask[p_slot(s) + i] = 1;
        return mask;
    }

    /// Orthogonal projector version of window_mask, for callers that want
    /// the operator itself.
    ComplexMatrix window(std::size_t w) const {
        const std::vector<char> mask = window_mask(w);
        ComplexMatrix proj(mask.size(), mask.size());
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (mask[i]) proj(i, i) = 1.0;
        return proj;
    }
};

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

/// Assembles the four block operators of the truncated dilation from a pair
/// and its two fundamental operators. The product dilation acts as
///   iso_prod: (h, a0, a1, ...) -> (P h, D_P h, a0, ...)
/// and the sum dilation as
///   iso_sum:  (h, a0, a1, ...) -> (S h, F* D_P h + F a0, F* a0 + F a1, ...),
/// with the unitary-space extensions feeding the outbound tail through the
/// defect of P* and the adjoint fundamental operator.
inline TruncatedDilation build_dilation(const GammaPair& pair, const FundamentalSolution& f,
                                        const FundamentalSolution& g, std::size_t depth) {
    if (depth < 2) throw DepthTooSmall("dilation depth must be at least 2");
    const std::size_t n = pair.dim();
    if (f.op.rows() != pair.basis_p.rank || g.op.rows() != pair.basis_pstar.rank)
        throw InvalidMatrix("fundamental operators do not match the pair's defect ranks");

    TruncatedDilation d;
    d.depth = depth;
    d.dim_h = n;
    d.rank_p = pair.basis_p.rank;
    d.rank_pstar = pair.basis_pstar.rank;

    const std::size_t dim_iso = d.dim_iso();
    const std::size_t dim_full = d.dim_full();
    const std::size_t rp = d.rank_p;
    const std::size_t rq = d.rank_pstar;

    // Coordinate maps between H and the tails.
    const ComplexMatrix enter_p = adjoint(pair.basis_p.basis) * pair.defect_p; // rp x n
    const ComplexMatrix exit_q = pair.defect_pstar * pair.basis_pstar.basis;   // n x rq
    const ComplexMatrix cross =
        (rp && rq) ? ComplexMatrix(-1.0 * (adjoint(pair.basis_p.basis) *
                                           (adjoint(pair.p) * pair.basis_pstar.basis)))
                   : ComplexMatrix(rp, rq); // rp x rq, carries -P* between the defect spaces
    const ComplexMatrix f_adj = adjoint(f.op);
    const ComplexMatrix g_adj = adjoint(g.op);

    d.iso_prod = ComplexMatrix(dim_iso, dim_iso);
    set_block(d.iso_prod, 0, 0, pair.p);
    if (rp) {
        set_block(d.iso_prod, d.p_slot(0), 0, enter_p);
        const ComplexMatrix eye = ComplexMatrix::identity(rp);
        for (std::size_t i = 1; i < depth; ++i)
            set_block(d.iso_prod, d.p_slot(i), d.p_slot(i - 1), eye);
    }

    d.iso_sum = ComplexMatrix(dim_iso, dim_iso);
    set_block(d.iso_sum, 0, 0, pair.s);
    if (rp) {
        set_block(d.iso_sum, d.p_slot(0), 0, f_adj * enter_p);
        for (std::size_t i = 0; i < depth; ++i) {
            set_block(d.iso_sum, d.p_slot(i), d.p_slot(i), f.op);
            if (i > 0) set_block(d.iso_sum, d.p_slot(i), d.p_slot(i - 1), f_adj);
        }
    }

    d.uni_prod = ComplexMatrix(dim_full, dim_full);
    set_block(d.uni_prod, 0, 0, d.iso_prod);
    d.uni_sum = ComplexMatrix(dim_full, dim_full);
    set_block(d.uni_sum, 0, 0, d.iso_sum);
    if (rq) {
        set_block(d.uni_prod, 0, d.q_slot(0), exit_q);
        set_block(d.uni_sum, 0, d.q_slot(0), exit_q * g.op);
        if (rp) {
            set_block(d.uni_prod, d.p_slot(0), d.q_slot(0), cross);
            set_block(d.uni_sum, d.p_slot(0), d.q_slot(0), cross * g.op);
        }
        const ComplexMatrix eye = ComplexMatrix::identity(rq);
        for (std::size_t i = 0; i < depth; ++i) {
            set_block(d.uni_sum, d.q_slot(i), d.q_slot(i), g_adj);
            if (i + 1 < depth) {
                set_block(d.uni_prod, d.q_slot(i), d.q_slot(i + 1), eye);
                set_block(d.uni_sum, d.q_slot(i), d.q_slot(i + 1), g.op);
            }
        }
    }

    d.embed_h = ComplexMatrix(dim_full, n);
    for (std::size_t i = 0; i < n; ++i) d.embed_h(i, i) = 1.0;
    return d;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Max over m <= m_max, n <= n_max of the compression defect
/// || P_H uni_sum^m uni_prod^n |_H  -  S^m P^n ||. Each application of a
/// dilation operator moves tail support by at most one slot, so the
/// compressions are truncation-exact while m + n stays below the depth.
inline double verify_dilation_identity(const TruncatedDilation& d, const GammaPair& pair,
                                       std::size_t m_max, std::size_t n_max) {
    if (m_max + n_max > d.depth - 1)
        throw PowersExceedDepth("m_max + n_max must not exceed depth - 1");
    const ComplexMatrix embed_adj = adjoint(d.embed_h);

    std::vector<ComplexMatrix> pow_s(m_max + 1), pow_p(n_max + 1);
    pow_s[0] = ComplexMatrix::identity(pair.dim());
    pow_p[0] = pow_s[0];
    for (std::size_t m = 1; m <= m_max; ++m) pow_s[m] = pow_s[m - 1] * pair.s;
    for (std::size_t n = 1; n <= n_max; ++n) pow_p[n] = pow_p[n - 1] * pair.p;

    double worst = 0.0;
    ComplexMatrix tail_n = d.embed_h; // uni_prod^n applied to the embedding
    for (std::size_t n = 0; n <= n_max; ++n) {
        ComplexMatrix cur = tail_n;
        for (std::size_t m = 0; m <= m_max; ++m) {
            const ComplexMatrix compression = embed_adj * cur;
            worst = std::max(worst, operator_norm(compression - pow_s[m] * pow_p[n]));
            if (m < m_max) cur = d.uni_sum * cur;
        }
        if (n < n_max) tail_n = d.uni_prod * tail_n;
    }
    return worst;
}

/// Windowed residuals of the unitary-pair structure. The identities hold
/// exactly in the infinite model; the window keeps two slots clear of the
/// truncation cut, so the reported numbers carry no truncation slack.
struct GammaUnitaryReport {
    double commute = 0.0;              ///< ||(RU - UR) W||
    double sum_adjoint_relation = 0.0; ///< ||(R - R* U) W||
    double prod_unitarity = 0.0;       ///< ||(U* U - I) W||
    double sum_norm = 0.0;             ///< ||R||, must not exceed 2 for genuine pairs

    double max_windowed() const {
        return std::max({commute, sum_adjoint_relation, prod_unitarity});
    }
};

inline GammaUnitaryReport verify_gamma_unitary(const TruncatedDilation& d, std::size_t window) {
    if (window + 2 > d.depth) throw WindowTooDeep("window must not exceed depth - 2");
    const std::vector<char> mask = d.window_mask(window);
    const ComplexMatrix& r = d.uni_sum;
    const ComplexMatrix& u = d.uni_prod;
    const ComplexMatrix ra = adjoint(r);
    const ComplexMatrix ua = adjoint(u);

    GammaUnitaryReport rep;
    rep.commute = operator_norm(mask_columns(r * u - u * r, mask));
    rep.sum_adjoint_relation = operator_norm(mask_columns(r - ra * u, mask));
    rep.prod_unitarity = operator_norm(
        mask_columns(ua * u - ComplexMatrix::identity(u.rows()), mask));
    rep.sum_norm = operator_norm(r);
    return rep;
}

/// Same battery on the isometric half of the construction.
struct GammaIsometryReport {
    double prod_isometry = 0.0;        ///< ||(V* V - I) W||
    double commute = 0.0;              ///< ||(T V - V T) W||
    double sum_adjoint_relation = 0.0; ///< ||(T - T* V) W||

    double max_windowed() const {
        return std::max({prod_isometry, commute, sum_adjoint_relation});
    }
};

inline GammaIsometryReport verify_gamma_isometry(const TruncatedDilation& d, std::size_t window) {
    if (window + 2 > d.depth) throw WindowTooDeep("window must not exceed depth - 2");
    const std::vector<char> mask = d.window_mask_iso(window);
    const ComplexMatrix& t = d.iso_sum;
    const ComplexMatrix& v = d.iso_prod;

    GammaIsometryReport rep;
    rep.prod_isometry = operator_norm(
        mask_columns(adjoint(v) * v - ComplexMatrix::identity(v.rows()), mask));
    rep.commute = operator_norm(mask_columns(t * v - v * t, mask));
    rep.sum_adjoint_relation = operator_norm(mask_columns(t - adjoint(t) * v, mask));
    return rep;
}

// ---------------------------------------------------------------------------
// Minimality
// ---------------------------------------------------------------------------

struct SpanReport {
    std::size_t span_dim = 0;
    std::size_t full_dim = 0;
};

namespace detail {

/// Incremental rank-revealing orthogonalisation (modified Gram-Schmidt with
/// one reorthogonalisation pass). Returns the retained orthonormal columns.
class SpanBuilder {
public:
    explicit SpanBuilder(double tol) : tol_(tol) {}

    bool add(std::vector<Complex> v) {
        double orig = norm(v);
        if (orig == 0.0) return false;
        for (int pass = 0; pass < 2; ++pass)
            for (const std::vector<Complex>& b : basis_) {
                Complex coeff{0.0, 0.0};
                for (std::size_t i = 0; i < v.size(); ++i) coeff += std::conj(b[i]) * v[i];
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= coeff * b[i];
            }
        const double rem = norm(v);
        if (rem <= tol_ * std::max(1.0, orig)) return false;
        for (Complex& z : v) z /= rem;
        basis_.push_back(std::move(v));
        return true;
    }

    std::size_t rank() const { return basis_.size(); }
    const std::vector<std::vector<Complex>>& basis() const { return basis_; }

    ComplexMatrix as_matrix(std::size_t dim) const {
        ComplexMatrix m(dim, basis_.size());
        for (std::size_t j = 0; j < basis_.size(); ++j)
            for (std::size_t i = 0; i < dim; ++i) m(i, j) = basis_[j][i];
        return m;
    }

private:
    static double norm(const std::vector<Complex>& v) {
        double s = 0.0;
        for (const Complex& z : v) s += std::norm(z);
        return std::sqrt(s);
    }

    double tol_;
    std::vector<std::vector<Complex>> basis_;
};

inline std::vector<Complex> column_of(const ComplexMatrix& m, std::size_t j) {
    std::vector<Complex> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
}

} // namespace detail

/// Dimension of span{ U^j h, U*^j h : h in H, 0 <= j <= depth } against the
/// full truncated dimension. Powers run up to the depth itself so the orbit
/// can reach the deepest slot of each tail; the unitary orbit alone (no sum
/// operator) must already fill everything reachable when the defects have
/// full rank.
inline SpanReport minimality_span(const TruncatedDilation& d) {
    const ComplexMatrix u_adj = adjoint(d.uni_prod);
    detail::SpanBuilder span(1e-8);

    ComplexMatrix fwd = d.embed_h;
    ComplexMatrix bwd = d.embed_h;
    for (std::size_t j = 0; j <= d.depth; ++j) {
        for (std::size_t c = 0; c < fwd.cols(); ++c) span.add(detail::column_of(fwd, c));
        if (j > 0)
            for (std::size_t c = 0; c < bwd.cols(); ++c) span.add(detail::column_of(bwd, c));
        if (j < d.depth) {
            fwd = d.uni_prod * fwd;
            bwd = u_adj * bwd;
        }
    }
    return SpanReport{span.rank(), d.dim_full()};
}

// ---------------------------------------------------------------------------
// Joint spectrum of an exact finite-dimensional unitary-boundary pair
// ---------------------------------------------------------------------------

struct NormalEigen {
    std::vector<Complex> values;
    ComplexMatrix vectors;
};

/// Diagonalises a normal matrix through its commuting Hermitian halves:
/// eigenspaces of the real part are refined by the imaginary part.
inline NormalEigen diagonalize_normal(const ComplexMatrix& m, double cluster_tol,
                                      const Tolerances& tols = {}) {
    if (!m.is_square()) throw InvalidMatrix("normal diagonalisation needs a square matrix");
    const std::size_t n = m.rows();
    const double scale = 1.0 + operator_norm(m);
    if (operator_norm(m * adjoint(m) - adjoint(m) * m) > tols.eps_lin * scale * scale)
        throw NotNormal("matrix is not normal within tolerance");

    const ComplexMatrix re = hermitian_part(m);
    ComplexMatrix im(n, n);
    const Complex minus_i{0.0, -1.0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            im(i, j) = minus_i * 0.5 * (m(i, j) - std::conj(m(j, i)));

    EigenDecomposition eig_re = hermitian_eig(re, tols.eps_lin);
    ComplexMatrix q = eig_re.vectors;
    const double atol = cluster_tol * scale;

    std::size_t lo = 0;
    while (lo < n) {
        std::size_t hi = lo + 1;
        while (hi < n && eig_re.values[hi] - eig_re.values[hi - 1] <= atol) ++hi;
        const std::size_t width = hi - lo;
        if (width > 1) {
            const ComplexMatrix qc = get_block(q, 0, lo, n, width);
            const ComplexMatrix compressed = adjoint(qc) * im * qc;
            EigenDecomposition sub = hermitian_eig(hermitian_part(compressed), tols.eps_lin);
            set_block(q, 0, lo, qc * sub.vectors);
        }
        lo = hi;
    }

    NormalEigen out;
    out.vectors = q;
    out.values.resize(n);
    const ComplexMatrix diag = adjoint(q) * m * q;
    for (std::size_t i = 0; i < n; ++i) out.values[i] = diag(i, i);
    return out;
}

/// Joint eigenvalues of a commuting pair (sum, prod) with prod unitary and
/// sum normal. Eigenvalues of prod within cluster_tol share a block; the
/// compression of sum to each block is diagonalised to emit the pairs.
struct JointSpectrum {
    std::vector<std::pair<Complex, Complex>> pairs; ///< (sum eigenvalue, prod eigenvalue)
    double cluster_tol = 0.0;
};

inline JointSpectrum joint_spectrum(const ComplexMatrix& sum_op, const ComplexMatrix& prod_op,
                                    double cluster_tol = 1e-8, const Tolerances& tols = {}) {
    if (!sum_op.is_square() || !same_shape(sum_op, prod_op))
        throw InvalidMatrix("joint_spectrum needs square matrices of equal shape");
    const std::size_t n = sum_op.rows();
    const double scale = (1.0 + operator_norm(sum_op)) * (1.0 + operator_norm(prod_op));
    if (operator_norm(sum_op * prod_op - prod_op * sum_op) > tols.tol_commute * scale)
        throw NotCommuting("joint_spectrum inputs do not commute");
    if (operator_norm(adjoint(prod_op) * prod_op - ComplexMatrix::identity(n)) >
        tols.eps_lin * scale)
        throw NotNormal("prod component is not unitary within tolerance");

    NormalEigen prod_eig = diagonalize_normal(prod_op, cluster_tol, tols);

    // Greedy clustering of the unimodular prod eigenvalues.
    std::vector<std::size_t> cluster_of(n);
    std::vector<Complex> reps;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < n; ++i) {
        bool placed = false;
        for (std::size_t c = 0; c < reps.size(); ++c)
            if (std::abs(prod_eig.values[i] - reps[c]) <= cluster_tol) {
                cluster_of[i] = c;
                members[c].push_back(i);
                placed = true;
                break;
            }
        if (!placed) {
            cluster_of[i] = reps.size();
            reps.push_back(prod_eig.values[i]);
            members.push_back({i});
        }
    }

    JointSpectrum out;
    out.cluster_tol = cluster_tol;
    for (std::size_t c = 0; c < reps.size(); ++c) {
        const std::size_t width = members[c].size();
        ComplexMatrix qc(n, width);
        Complex mean{0.0, 0.0};
        for (std::size_t k = 0; k < width; ++k) {
            mean += prod_eig.values[members[c][k]];
            for (std::size_t i = 0; i < n; ++i) qc(i, k) = prod_eig.vectors(i, members[c][k]);
        }
        mean /= static_cast<double>(width);
        const ComplexMatrix compressed = adjoint(qc) * sum_op * qc;
        NormalEigen sum_eig = diagonalize_normal(compressed, cluster_tol, tols);
        for (const Complex& mu : sum_eig.values) out.pairs.emplace_back(mu, mean);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Semi-invariance versus dilation
// ---------------------------------------------------------------------------

struct SemiInvarianceReport {
    bool complement_invariant = false; ///< N (+) H splits with invariant complement
    bool compressions_dilate = false;  ///< monomial compressions match up to the degree bound
    double max_invariance_residual = 0.0;
    double max_dilation_residual = 0.0;

    bool agree() const { return complement_invariant == compressions_dilate; }
};

namespace detail {

template <typename Fn>
inline void for_each_monomial(std::size_t n_ops, std::size_t max_total, std::vector<std::size_t>& expo,
                              std::size_t pos, std::size_t used, Fn&& fn) {
    if (pos == n_ops) {
        if (used > 0) fn(expo);
        return;
    }
    for (std::size_t e = 0; e + used <= max_total; ++e) {
        expo[pos] = e;
        for_each_monomial(n_ops, max_total, expo, pos + 1, used + e, fn);
    }
    expo[pos] = 0;
}

inline ComplexMatrix monomial(const std::vector<ComplexMatrix>& ops,
                              const std::vector<std::size_t>& expo) {
    ComplexMatrix acc = ComplexMatrix::identity(ops.front().rows());
    for (std::size_t k = 0; k < ops.size(); ++k)
        for (std::size_t e = 0; e < expo[k]; ++e) acc = ops[k] * acc;
    return acc;
}

} // namespace detail

/// Checks the two sides of the semi-invariance / dilation equivalence.
/// Direction one saturates the joint invariant subspace generated by H
/// (finite-dimensionally the monomial join stabilises, which makes the
/// invariance of the complement an exact statement) and tests that each
/// operator maps N (-) H into itself. Direction two compares monomial
/// compressions against monomials of the compressions up to the given
/// total degree.
inline SemiInvarianceReport check_semi_invariance(const std::vector<ComplexMatrix>& ops,
                                                  const ComplexMatrix& subspace_basis,
                                                  std::size_t powers, const Tolerances& tols = {}) {
    if (ops.empty()) throw std::invalid_argument("check_semi_invariance: no operators");
    const std::size_t dim = ops.front().rows();
    for (const ComplexMatrix& op : ops)
        if (!op.is_square() || op.rows() != dim)
            throw InvalidMatrix("operators must be square and of equal shape");
    for (std::size_t a = 0; a < ops.size(); ++a)
        for (std::size_t b = a + 1; b < ops.size(); ++b) {
            const double scale = (1.0 + operator_norm(ops[a])) * (1.0 + operator_norm(ops[b]));
            if (operator_norm(ops[a] * ops[b] - ops[b] * ops[a]) > tols.tol_commute * scale)
                throw NotCommuting("semi-invariance operators do not commute");
        }
    if (subspace_basis.rows() != dim)
        throw InvalidMatrix("subspace basis does not live in the operators' space");
    const std::size_t h_dim = subspace_basis.cols();
    if (operator_norm(adjoint(subspace_basis) * subspace_basis -
                      ComplexMatrix::identity(h_dim)) > 1e-8)
        throw std::invalid_argument("subspace basis must have orthonormal columns");

    SemiInvarianceReport rep;

    // Direction two: monomial compressions versus compressed monomials.
    std::vector<ComplexMatrix> comps;
    comps.reserve(ops.size());
    for (const ComplexMatrix& op : ops) comps.push_back(adjoint(subspace_basis) * op * subspace_basis);
    rep.compressions_dilate = true;
    std::vector<std::size_t> expo(ops.size(), 0);
    detail::for_each_monomial(ops.size(), powers, expo, 0, 0, [&](const std::vector<std::size_t>& e) {
        const ComplexMatrix big = detail::monomial(ops, e);
        const ComplexMatrix small = detail::monomial(comps, e);
        const double res = operator_norm(adjoint(subspace_basis) * big * subspace_basis - small);
        rep.max_dilation_residual = std::max(rep.max_dilation_residual, res);
        if (res > tols.tol_dil * (1.0 + operator_norm(big))) rep.compressions_dilate = false;
    });

    // Direction one: saturate N = join of all monomial images of H, then
    // test invariance of its orthogonal complement of H inside N.
    detail::SpanBuilder join(1e-10);
    std::vector<std::vector<Complex>> fresh;
    for (std::size_t c = 0; c < h_dim; ++c) {
        std::vector<Complex> v = detail::column_of(subspace_basis, c);
        if (join.add(v)) fresh.push_back(join.basis().back());
    }
    while (!fresh.empty()) {
        std::vector<std::vector<Complex>> next;
        for (const std::vector<Complex>& v : fresh)
            for (const ComplexMatrix& op : ops) {
                std::vector<Complex> w = mat_vec(op, v);
                if (join.add(w)) next.push_back(join.basis().back());
            }
        fresh = std::move(next);
    }

    detail::SpanBuilder complement(1e-10);
    for (const std::vector<Complex>& v : join.basis()) {
        std::vector<Complex> w = v;
        // project out H
        for (std::size_t c = 0; c < h_dim; ++c) {
            Complex coeff{0.0, 0.0};
            for (std::size_t i = 0; i < dim; ++i) coeff += std::conj(subspace_basis(i, c)) * w[i];
            for (std::size_t i = 0; i < dim; ++i) w[i] -= coeff * subspace_basis(i, c);
        }
        complement.add(std::move(w));
    }

    rep.complement_invariant = true;
    if (complement.rank() > 0) {
        const ComplexMatrix mbasis = complement.as_matrix(dim);
        const ComplexMatrix proj_m = mbasis * adjoint(mbasis);
        for (const ComplexMatrix& op : ops) {
            const ComplexMatrix image = op * mbasis;
            const double res = operator_norm(image - proj_m * image);
            rep.max_invariance_residual = std::max(rep.max_invariance_residual, res);
            if (res > tols.tol_dil * (1.0 + operator_norm(op)))
                rep.complement_invariant = false;
        }
    }
    return rep;
}

} // namespace gammadil
