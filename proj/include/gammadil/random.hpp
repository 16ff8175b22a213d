#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gammadil/config.hpp"
#include "gammadil/eig.hpp"
#include "gammadil/gamma.hpp"
#include "gammadil/matrix.hpp"

namespace gammadil {

/// xorshift64* generator. Chosen because its entire state is one 64-bit
/// word and its output stream is specified exactly, so any consumer can
/// reproduce generated instances bit for bit.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed)
        : state_(seed ? seed : 0x106689d45497fdb5ull) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545f4914f6cdd1dull;
    }

    /// Uniform in [0, 1) with 53 significant bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

    Complex next_complex() {
        const double re = uniform_pm1();
        const double im = uniform_pm1();
        return Complex{re, im};
    }

private:
    std::uint64_t state_;
};

inline ComplexMatrix random_matrix(Xorshift64Star& rng, std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.next_complex();
    return m;
}

/// Rescales a matrix to operator norm exactly `target`; keeps zero matrices
/// as they are. Strictly sub-unit targets keep defect operators well away
/// from rank ambiguity.
inline ComplexMatrix scaled_to_norm(const ComplexMatrix& m, double target) {
    const double norm = operator_norm(m);
    if (norm < 1e-300) return m;
    return m * (target / norm);
}

inline ComplexMatrix random_contraction(Xorshift64Star& rng, std::size_t n, double norm = 0.95) {
    return scaled_to_norm(random_matrix(rng, n, n), norm);
}

/// q(T) for a random polynomial q of degree in [1, 3].
inline ComplexMatrix random_polynomial_of(Xorshift64Star& rng, const ComplexMatrix& t) {
    const std::size_t degree = 1 + static_cast<std::size_t>(rng.next() % 3);
    ComplexMatrix acc = ComplexMatrix(t.rows(), t.cols());
    ComplexMatrix power = ComplexMatrix::identity(t.rows());
    for (std::size_t k = 0; k <= degree; ++k) {
        acc += rng.next_complex() * power;
        if (k < degree) power = power * t;
    }
    return acc;
}

/// Deterministic commuting-contraction pair: two polynomials of one seeded
/// contraction, each rescaled to norm 0.95, then symmetrized. Commutation
/// holds by construction up to rounding.
inline GammaPair random_gamma_pair(std::uint64_t seed, std::size_t n, const Tolerances& tols = {}) {
    Xorshift64Star rng(seed);
    const ComplexMatrix t = random_contraction(rng, n);
    const ComplexMatrix t1 = scaled_to_norm(random_polynomial_of(rng, t), 0.95);
    const ComplexMatrix t2 = scaled_to_norm(random_polynomial_of(rng, t), 0.95);
    return symmetrize(t1, t2, tols);
}

inline ComplexMatrix random_diagonal_unitary(Xorshift64Star& rng, std::size_t n) {
    ComplexMatrix m(n, n);
    const double two_pi = 6.28318530717958647692;
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = two_pi * rng.uniform01();
        m(i, i) = Complex{std::cos(phase), std::sin(phase)};
    }
    return m;
}

/// Random unitary via orthonormalisation of a random matrix.
inline ComplexMatrix random_unitary(Xorshift64Star& rng, std::size_t n) {
    const ComplexMatrix m = random_matrix(rng, n, n);
    std::vector<std::vector<Complex>> basis;
    ComplexMatrix q(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Complex> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = m(i, c);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                Complex coeff{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) coeff += std::conj(b[i]) * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= coeff * b[i];
            }
        double nv = 0.0;
        for (const Complex& z : v) nv += std::norm(z);
        nv = std::sqrt(nv);
        if (nv < 1e-12) {
            // a random column happened to be dependent; take a unit vector
            std::fill(v.begin(), v.end(), Complex{0.0, 0.0});
            v[c] = 1.0;
        } else {
            for (Complex& z : v) z /= nv;
        }
        basis.push_back(v);
        for (std::size_t i = 0; i < n; ++i) q(i, c) = v[i];
    }
    return q;
}

/// Random bivariate polynomial with all total degrees up to the bound.
inline BivariatePolynomial random_bivariate_polynomial(Xorshift64Star& rng, int max_total_degree) {
    std::vector<BivariateTerm> terms;
    for (int m = 0; m <= max_total_degree; ++m)
        for (int n = 0; m + n <= max_total_degree; ++n)
            terms.push_back({m, n, rng.next_complex()});
    return BivariatePolynomial(std::move(terms));
}

} // namespace gammadil
