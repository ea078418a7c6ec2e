#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dstm/error.hpp"

namespace dstm {

using cx = std::complex<double>;

inline bool is_finite(cx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// Dense row-major complex matrix. Sized for the 4x4 and 8x8 blocks this
/// library works with; no attempt is made at large-matrix performance.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows_ * cols_)
            throw DimensionError("entry count does not match rows*cols");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_ && rows_ > 0; }
    bool empty() const { return e_.empty(); }

    cx& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    cx operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    std::span<const cx> entries() const { return e_; }
    std::span<cx> entries() { return e_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
        return *this;
    }

    ComplexMatrix& operator*=(cx s) {
        for (auto& v : e_) v *= s;
        return *this;
    }

    /// Accumulate s*o without allocating.
    void add_scaled(cx s, const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += s * o.e_[k];
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : e_) m = std::max(m, std::abs(v));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : e_) s += std::norm(v);
        return std::sqrt(s);
    }

    bool all_finite() const {
        for (const auto& v : e_)
            if (!is_finite(v)) return false;
        return true;
    }

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError("matrix shapes do not match");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cx> e_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(cx s, ComplexMatrix a) { return a *= s; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("product dimensions do not conform");
    ComplexMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cx aik = a(i, k);
            if (aik == cx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix shapes do not match");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

namespace detail {

/// In-place LU determinant with partial pivoting on a raw row-major buffer.
/// No validation; callers on the hot path guarantee a finite square input.
inline cx lu_det_inplace(cx* a, std::size_t n) {
    cx det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(a[r * n + col]);
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (best == 0.0) return cx{0.0, 0.0};
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
            det = -det;
        }
        const cx p = a[col * n + col];
        det *= p;
        for (std::size_t r = col + 1; r < n; ++r) {
            const cx f = a[r * n + col] / p;
            if (f == cx{}) continue;
            a[r * n + col] = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
        }
    }
    return det;
}

}  // namespace detail

inline cx determinant(const ComplexMatrix& m) {
    if (!m.square()) throw DimensionError("determinant requires a square, non-empty matrix");
    if (!m.all_finite()) throw Error("determinant: non-finite entry");
    std::vector<cx> work(m.entries().begin(), m.entries().end());
    return detail::lu_det_inplace(work.data(), m.rows());
}

/// Number of pivots above tol times the largest-magnitude entry of the input,
/// under Gaussian elimination with partial pivoting.
inline std::size_t rank(const ComplexMatrix& m, double tol = 1e-9) {
    if (!(tol > 0.0)) throw Error("rank: tolerance must be positive");
    if (m.empty()) return 0;
    if (!m.all_finite()) throw Error("rank: non-finite entry");
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<cx> a(m.entries().begin(), m.entries().end());
    double scale = 0.0;
    for (const auto& v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0;
    const double cutoff = tol * scale;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = r;
        double best = std::abs(a[r * cols + col]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const double mag = std::abs(a[i * cols + col]);
            if (mag > best) {
                best = mag;
                piv = i;
            }
        }
        if (best <= cutoff) continue;  // treat column as spent
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        const cx p = a[r * cols + col];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const cx f = a[i * cols + col] / p;
            if (f == cx{}) continue;
            for (std::size_t j = col; j < cols; ++j) a[i * cols + j] -= f * a[r * cols + j];
        }
        ++r;
    }
    return r;
}

/// Max absolute entry of M*M^H - I.
inline double unitarity_defect(const ComplexMatrix& m) {
    if (!m.square()) throw DimensionError("unitarity defect requires a square matrix");
    const std::size_t n = m.rows();
    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cx g{};
            for (std::size_t k = 0; k < n; ++k) g += m(i, k) * std::conj(m(j, k));
            if (i == j) g -= 1.0;
            defect = std::max(defect, std::abs(g));
        }
    }
    return defect;
}

/// Re{tr(A*B)} without forming the product.
inline double re_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionError("trace of product requires conforming shapes");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cx x = a(i, k) * b(k, i);
            s += x.real();
        }
    return s;
}

}  // namespace dstm
