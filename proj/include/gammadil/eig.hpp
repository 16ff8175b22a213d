#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gammadil/config.hpp"
#include "gammadil/errors.hpp"
#include "gammadil/matrix.hpp"

namespace gammadil {

/// Result of a Hermitian eigendecomposition: A = Q diag(values) Q*,
/// values ascending, columns of Q orthonormal.
struct EigenDecomposition {
    std::vector<double> values;
    ComplexMatrix vectors;
};

namespace detail {

inline double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Cyclic Jacobi on a Hermitian matrix with complex plane rotations.
// Each pivot (p,q) is annihilated by W = D*J, where D = diag(1, conj(phi))
// strips the phase of A(p,q) and J is the classical real rotation. The
// sweep budget is fixed; exceeding it without reaching eps_lin is an error.
inline void jacobi_hermitian(ComplexMatrix& a, ComplexMatrix* q, double eps_lin) {
    const std::size_t n = a.rows();
    if (q) *q = ComplexMatrix::identity(n);
    if (n < 2) return;

    const double fro = frobenius_norm(a);
    if (fro == 0.0) return;
    const double target = 1e-15 * fro;
    const double skip = 1e-18 * fro;
    const int max_sweeps = 30;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(a) <= target) return;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t qi = p + 1; qi < n; ++qi) {
                const Complex beta = a(p, qi);
                const double b = std::abs(beta);
                if (b <= skip) continue;
                const Complex phi = beta / b;
                const double alpha = a(p, p).real();
                const double gamma = a(qi, qi).real();

                const double tau = (gamma - alpha) / (2.0 * b);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex sphi_conj = s * std::conj(phi);
                const Complex sphi = s * phi;

                for (std::size_t i = 0; i < n; ++i) { // right-multiply by W
                    const Complex aip = a(i, p), aiq = a(i, qi);
                    a(i, p) = c * aip - sphi_conj * aiq;
                    a(i, qi) = s * aip + c * std::conj(phi) * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) { // left-multiply by W*
                    const Complex apj = a(p, j), aqj = a(qi, j);
                    a(p, j) = c * apj - sphi * aqj;
                    a(qi, j) = s * apj + c * phi * aqj;
                }
                a(p, qi) = 0.0;
                a(qi, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(qi, qi) = a(qi, qi).real();

                if (q) {
                    for (std::size_t i = 0; i < n; ++i) {
                        const Complex qip = (*q)(i, p), qiq = (*q)(i, qi);
                        (*q)(i, p) = c * qip - sphi_conj * qiq;
                        (*q)(i, qi) = s * qip + c * std::conj(phi) * qiq;
                    }
                }
            }
        }
    }
    if (offdiag_norm(a) > eps_lin * fro)
        throw NoConvergence("Jacobi sweep budget exhausted");
}

inline void require_hermitian(const ComplexMatrix& a, double eps_lin) {
    if (!a.is_square()) throw NotHermitian("matrix is not square");
    double dev = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            dev += std::norm(a(i, j) - std::conj(a(j, i)));
    const double fro = frobenius_norm(a);
    if (std::sqrt(dev) > eps_lin * fro + eps_lin)
        throw NotHermitian("matrix deviates from its adjoint");
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix via cyclic Jacobi.
inline EigenDecomposition hermitian_eig(const ComplexMatrix& a, double eps_lin = Tolerances{}.eps_lin) {
    detail::require_hermitian(a, eps_lin);
    ComplexMatrix work = hermitian_part(a);
    ComplexMatrix q;
    detail::jacobi_hermitian(work, &q, eps_lin);

    const std::size_t n = a.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return work(i, i).real() < work(j, j).real();
    });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = work(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = q(i, order[k]);
    }
    return out;
}

/// Eigenvalues only (ascending); cheaper when vectors are not needed.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a,
                                                 double eps_lin = Tolerances{}.eps_lin) {
    detail::require_hermitian(a, eps_lin);
    ComplexMatrix work = hermitian_part(a);
    detail::jacobi_hermitian(work, nullptr, eps_lin);
    std::vector<double> values(a.rows());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = work(i, i).real();
    std::sort(values.begin(), values.end());
    return values;
}

/// Hermitian PSD square root. Eigenvalues in [-eps_lin, 0) are clamped to
/// zero so that defect operators of contractions of norm exactly one do
/// not trip the PSD gate on roundoff.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& a, double eps_lin = Tolerances{}.eps_lin) {
    EigenDecomposition eig = hermitian_eig(a, eps_lin);
    double lam_max = 0.0;
    for (double v : eig.values) lam_max = std::max(lam_max, std::abs(v));
    if (!eig.values.empty() && eig.values.front() < -(eps_lin * lam_max + eps_lin))
        throw NotPSD("negative eigenvalue beyond tolerance");

    const std::size_t n = a.rows();
    ComplexMatrix scaled = eig.vectors;
    for (std::size_t k = 0; k < n; ++k) {
        const double root = std::sqrt(std::max(eig.values[k], 0.0));
        for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= root;
    }
    return hermitian_part(scaled * adjoint(eig.vectors));
}

/// Orthonormal basis of the numerically nonzero eigenspace of a PSD
/// operator, plus the orthogonal projector onto it. Rank 0 yields an
/// n-by-0 basis and the zero projector.
struct RangeBasis {
    ComplexMatrix basis;     ///< n x rank, orthonormal columns, leading eigenvalue first
    ComplexMatrix projector; ///< basis * basis^*
    std::size_t rank = 0;
};

inline RangeBasis range_basis(const ComplexMatrix& d, double rank_tol = Tolerances{}.rank_tol) {
    EigenDecomposition eig = hermitian_eig(d);
    const std::size_t n = d.rows();
    const double lam_max = eig.values.empty() ? 0.0 : std::max(eig.values.back(), 0.0);
    const double threshold = rank_tol * lam_max;

    std::vector<std::size_t> keep;
    for (std::size_t k = n; k-- > 0;)
        if (eig.values[k] > threshold && eig.values[k] > 0.0) keep.push_back(k);

    RangeBasis out;
    out.rank = keep.size();
    out.basis = ComplexMatrix(n, out.rank);
    for (std::size_t c = 0; c < keep.size(); ++c)
        for (std::size_t i = 0; i < n; ++i) out.basis(i, c) = eig.vectors(i, keep[c]);
    out.projector = out.rank ? out.basis * adjoint(out.basis) : ComplexMatrix(n, n);
    return out;
}

/// Applies the pseudoinverse of a PSD operator: eigenvalues above
/// rank_tol * lambda_max are inverted, the rest are zeroed.
inline ComplexMatrix pinv_apply(const ComplexMatrix& d, const ComplexMatrix& m,
                                double rank_tol = Tolerances{}.rank_tol) {
    if (d.rows() != m.rows()) throw InvalidMatrix("pinv_apply dimension mismatch");
    EigenDecomposition eig = hermitian_eig(d);
    const double lam_max = eig.values.empty() ? 0.0 : std::max(eig.values.back(), 0.0);
    const double threshold = rank_tol * lam_max;

    ComplexMatrix y = adjoint(eig.vectors) * m;
    for (std::size_t i = 0; i < y.rows(); ++i) {
        const double inv = (eig.values[i] > threshold && eig.values[i] > 0.0)
                               ? 1.0 / eig.values[i]
                               : 0.0;
        for (std::size_t j = 0; j < y.cols(); ++j) y(i, j) *= inv;
    }
    return eig.vectors * y;
}

namespace detail {

// Deterministic start vector for the power iteration; a fixed xorshift
// stream keeps results reproducible across runs and platforms.
inline std::vector<Complex> power_start(std::size_t n) {
    std::vector<Complex> v(n);
    std::uint64_t x = 0x9e3779b97f4a7c15ull;
    auto next = [&x]() {
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        return x * 0x2545f4914f6cdd1dull;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double re = static_cast<double>(next() >> 11) * 0x1.0p-52 - 1.0;
        const double im = static_cast<double>(next() >> 11) * 0x1.0p-52 - 1.0;
        v[i] = Complex{re, im};
    }
    return v;
}

} // namespace detail

/// Spectral norm. Exact (via Jacobi on the Gram matrix) up to moderate
/// size, power iteration on the Gram matrix beyond that.
inline double operator_norm(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    const bool tall = m.rows() >= m.cols();
    const ComplexMatrix gram = tall ? adjoint(m) * m : m * adjoint(m);
    const std::size_t n = gram.rows();

    if (n <= 48) {
        std::vector<double> vals = hermitian_eigenvalues(gram);
        return std::sqrt(std::max(vals.back(), 0.0));
    }

    std::vector<Complex> v = detail::power_start(n);
    double nv = 0.0;
    for (const Complex& z : v) nv += std::norm(z);
    nv = std::sqrt(nv);
    for (Complex& z : v) z /= nv;

    double lambda = 0.0;
    int stable = 0;
    for (int iter = 0; iter < 2000; ++iter) {
        std::vector<Complex> y = mat_vec(gram, v);
        Complex rq{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) rq += std::conj(v[i]) * y[i];
        const double est = rq.real();
        double ny = 0.0;
        for (const Complex& z : y) ny += std::norm(z);
        ny = std::sqrt(ny);
        if (ny == 0.0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / ny;
        if (std::abs(est - lambda) <= 1e-12 * std::max(std::abs(est), 1e-300)) {
            if (++stable >= 3) {
                lambda = est;
                break;
            }
        } else {
            stable = 0;
        }
        lambda = est;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

} // namespace gammadil
