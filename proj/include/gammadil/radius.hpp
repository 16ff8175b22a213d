#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gammadil/config.hpp"
#include "gammadil/eig.hpp"
#include "gammadil/matrix.hpp"

namespace gammadil {

namespace detail {

// Largest eigenvalue of Re(e^{i theta} A) maximised over the angle. The
// sweep runs over [0, pi) only: rotating by pi negates the Hermitian part,
// so taking max(lambda_max, -lambda_min) at each angle covers the other
// half of the circle.
inline double radius_objective(const ComplexMatrix& a, double theta) {
    const Complex phase{std::cos(theta), std::sin(theta)};
    ComplexMatrix h(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            h(i, j) = 0.5 * (phase * a(i, j) + std::conj(phase * a(j, i)));
    std::vector<double> vals = hermitian_eigenvalues(h);
    return std::max(vals.back(), -vals.front());
}

} // namespace detail

/// Numerical radius w(A) = max_theta lambda_max((e^{i theta}A + e^{-i theta}A*)/2),
/// via a uniform angle grid followed by golden-section refinement of the
/// best bracket.
inline double numerical_radius(const ComplexMatrix& a, std::size_t grid = RadiusOptions{}.grid,
                               double refine_tol = RadiusOptions{}.refine_tol) {
    if (!a.is_square()) throw InvalidMatrix("numerical radius needs a square matrix");
    if (grid < 8) throw std::invalid_argument("numerical_radius: grid must be >= 8");
    if (a.rows() == 0) return 0.0;
    if (max_abs(a) == 0.0) return 0.0;

    const double pi = 3.14159265358979323846;
    const double step = pi / static_cast<double>(grid);

    double best = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < grid; ++k) {
        const double v = detail::radius_objective(a, static_cast<double>(k) * step);
        if (v > best) {
            best = v;
            best_k = k;
        }
    }

    // Golden-section maximisation on the two neighbouring cells; the
    // objective is pi-periodic so the bracket may wrap.
    double lo = (static_cast<double>(best_k) - 1.0) * step;
    double hi = (static_cast<double>(best_k) + 1.0) * step;
    const double inv_golden = 0.6180339887498949;
    double x1 = hi - inv_golden * (hi - lo);
    double x2 = lo + inv_golden * (hi - lo);
    double f1 = detail::radius_objective(a, x1);
    double f2 = detail::radius_objective(a, x2);
    while (hi - lo > refine_tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_golden * (hi - lo);
            f2 = detail::radius_objective(a, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_golden * (hi - lo);
            f1 = detail::radius_objective(a, x1);
        }
        best = std::max(best, std::max(f1, f2));
    }
    return best;
}

} // namespace gammadil
