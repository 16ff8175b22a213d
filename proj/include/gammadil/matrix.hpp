#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "gammadil/errors.hpp"

namespace gammadil {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major, value semantics. The universal carrier
/// for every operator in the toolkit. Entries are validated to be finite
/// whenever a matrix is built from user-supplied data.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            throw InvalidMatrix("entry count does not match rows*cols");
        for (const Complex& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw InvalidMatrix("non-finite matrix entry");
    }

    /// Row-major brace construction for small literals in tests.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> init)
        : ComplexMatrix(rows, cols, std::vector<Complex>(init)) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<Complex>& d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& data() const { return data_; }
    std::vector<Complex>& data() { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    ComplexMatrix& operator*=(Complex a) {
        for (Complex& z : data_) z *= a;
        return *this;
    }

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw InvalidMatrix("shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= Complex{s, 0.0}; }
inline ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex{s, 0.0}; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidMatrix("inner dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

inline ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
    return c;
}

/// (A + A*)/2; exact symmetrisation used before Hermitian solves.
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return c;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

inline double max_abs(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& z : a.data()) s = std::max(s, std::abs(z));
    return s;
}

inline bool same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols();
}

/// Copies `block` into `dst` with its (0,0) entry at (row0, col0).
inline void set_block(ComplexMatrix& dst, std::size_t row0, std::size_t col0,
                      const ComplexMatrix& block) {
    if (row0 + block.rows() > dst.rows() || col0 + block.cols() > dst.cols())
        throw InvalidMatrix("block does not fit");
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j)
            dst(row0 + i, col0 + j) = block(i, j);
}

inline ComplexMatrix get_block(const ComplexMatrix& src, std::size_t row0, std::size_t col0,
                               std::size_t rows, std::size_t cols) {
    if (row0 + rows > src.rows() || col0 + cols > src.cols())
        throw InvalidMatrix("block out of range");
    ComplexMatrix b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) b(i, j) = src(row0 + i, col0 + j);
    return b;
}

/// M with the columns outside the mask zeroed; equal to M * diag(mask).
inline ComplexMatrix mask_columns(const ComplexMatrix& m, const std::vector<char>& mask) {
    if (mask.size() != m.cols()) throw InvalidMatrix("column mask length mismatch");
    ComplexMatrix out = m;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!mask[j])
            for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = 0.0;
    return out;
}

inline std::vector<Complex> mat_vec(const ComplexMatrix& a, const std::vector<Complex>& x) {
    if (a.cols() != x.size()) throw InvalidMatrix("mat_vec dimension mismatch");
    std::vector<Complex> y(a.rows(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

} // namespace gammadil
