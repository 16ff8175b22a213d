#pragma once

#include <cstddef>

namespace gammadil {

/// Numerical tolerances shared across the toolkit. Every knob can be
/// overridden per call; the defaults below are used everywhere else.
struct Tolerances {
    double eps_lin     = 1e-10; ///< linear-algebra kernel bound (eig, sqrt, unitarity)
    double rank_tol    = 1e-10; ///< relative eigenvalue cutoff for range bases / pseudoinverses
    double tol_fund    = 1e-8;  ///< fundamental-equation residual bound
    double tol_dil     = 1e-8;  ///< dilation residual bound
    double tol_w       = 1e-8;  ///< slack on the numerical-radius <= 1 bound
    double tol_commute = 1e-8;  ///< commutation residual bound
    double tol_vn      = 1e-8;  ///< slack in the sampled von Neumann inequality
};

/// Parameters of the numerical-radius maximisation.
struct RadiusOptions {
    std::size_t grid = 256;    ///< uniform samples of the angle sweep
    double refine_tol = 1e-10; ///< golden-section bracket width at which to stop
};

} // namespace gammadil
