#pragma once

#include "frobg/errors.hpp"
#include "frobg/numeric.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace frobg {

// Dense row-major matrix over Rational, Real or Complex. Sizes in this project
// stay below 8, so there is no blocking or sparsity.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    template <class U>
    Matrix<U> cast() const {
        Matrix<U> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = U((*this)(i, j));
        return m;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

namespace detail {

inline Real pivot_magnitude(const Rational& q) { return q == 0 ? Real(0) : Real(1); }
inline Real pivot_magnitude(const Real& x) { return boost::multiprecision::abs(x); }
inline Real pivot_magnitude(const Complex& z) { return abs(z); }

// Row echelon form in place; returns the determinant of the square prefix.
template <class T>
T eliminate(Matrix<T>& m, Matrix<T>* companion) {
    const std::size_t n = m.rows();
    T det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        Real best_mag = pivot_magnitude(m(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            Real mag = pivot_magnitude(m(r, col));
            if (mag > best_mag) {
                best = r;
                best_mag = mag;
            }
        }
        if (best_mag == 0) return T(0);
        if (best != col) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(col, j), m(best, j));
            if (companion)
                for (std::size_t j = 0; j < companion->cols(); ++j) std::swap((*companion)(col, j), (*companion)(best, j));
            det = -det;
        }
        const T pivot = m(col, col);
        det *= pivot;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m(r, col) == T(0)) continue;
            const T factor = m(r, col) / pivot;
            for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) -= factor * m(col, j);
            if (companion)
                for (std::size_t j = 0; j < companion->cols(); ++j) (*companion)(r, j) -= factor * (*companion)(col, j);
        }
    }
    return det;
}

}  // namespace detail

template <class T>
T determinant(Matrix<T> m) {
    return detail::eliminate<T>(m, nullptr);
}

/// Gauss-Jordan inverse; throws DegenerateMetric on a singular matrix.
template <class T>
Matrix<T> inverse(Matrix<T> m) {
    const std::size_t n = m.rows();
    Matrix<T> inv = Matrix<T>::identity(n);
    const T det = detail::eliminate<T>(m, &inv);
    if (det == T(0)) fail(ErrorCode::DegenerateMetric, "matrix is singular");
    for (std::size_t i = 0; i < n; ++i) {
        const T d = m(i, i);
        for (std::size_t j = 0; j < n; ++j) inv(i, j) /= d;
    }
    return inv;
}

/// Solves A x = b for a rectangular system by reduced row echelon form.
/// Free unknowns are set to zero; std::nullopt when inconsistent.
template <class T>
std::optional<std::vector<T>> solve(Matrix<T> a, std::vector<T> b) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = r;
        Real best_mag = detail::pivot_magnitude(a(r, c));
        for (std::size_t i = r + 1; i < rows; ++i) {
            Real mag = detail::pivot_magnitude(a(i, c));
            if (mag > best_mag) {
                best = i;
                best_mag = mag;
            }
        }
        if (best_mag == 0) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(best, j));
        std::swap(b[r], b[best]);
        const T pivot = a(r, c);
        for (std::size_t j = 0; j < cols; ++j) a(r, j) /= pivot;
        b[r] /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == T(0)) continue;
            const T f = a(i, c);
            for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
            b[i] -= f * b[r];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (detail::pivot_magnitude(b[i]) != 0) return std::nullopt;
    std::vector<T> x(cols, T(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
    return x;
}

// Fully indexed dense array with n^rank entries.
template <class T>
class Tensor {
public:
    Tensor() = default;
    Tensor(std::size_t n, std::size_t rank) : n_(n), rank_(rank), data_(ipow(n, rank), T(0)) {}

    std::size_t dim() const { return n_; }
    std::size_t rank() const { return rank_; }

    template <class... I>
    T& operator()(I... idx) {
        return data_[offset({static_cast<std::size_t>(idx)...})];
    }
    template <class... I>
    const T& operator()(I... idx) const {
        return data_[offset({static_cast<std::size_t>(idx)...})];
    }

    T& at(const std::vector<std::size_t>& idx) { return data_[offset(idx)]; }
    const T& at(const std::vector<std::size_t>& idx) const { return data_[offset(idx)]; }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

private:
    static std::size_t ipow(std::size_t n, std::size_t r) {
        std::size_t v = 1;
        for (std::size_t i = 0; i < r; ++i) v *= n;
        return v;
    }
    template <class Seq>
    std::size_t offset(const Seq& idx) const {
        std::size_t off = 0;
        for (std::size_t i : idx) off = off * n_ + i;
        return off;
    }
    std::size_t offset(std::initializer_list<std::size_t> idx) const {
        std::size_t off = 0;
        for (std::size_t i : idx) off = off * n_ + i;
        return off;
    }

    std::size_t n_ = 0;
    std::size_t rank_ = 0;
    std::vector<T> data_;
};

}  // namespace frobg
