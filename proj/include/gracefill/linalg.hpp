#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace gracefill {

/// Dense row-major matrix of doubles. Just enough linear algebra for the
/// model core; everything stays contiguous for the hot loops.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    double* row_ptr(std::size_t r) { return data.data() + r * cols; }
    const double* row_ptr(std::size_t r) const { return data.data() + r * cols; }

    bool same_shape(const Matrix& other) const {
        return rows == other.rows && cols == other.cols;
    }

    void fill(double v) { data.assign(data.size(), v); }
};

/// out(1 x n) += row(1 x m) * mat(m x n)
inline void add_row_times_matrix(const double* row, const Matrix& mat, double* out) {
    for (std::size_t i = 0; i < mat.rows; ++i) {
        const double r = row[i];
        if (r == 0.0) continue;
        const double* m = mat.row_ptr(i);
        for (std::size_t j = 0; j < mat.cols; ++j) out[j] += r * m[j];
    }
}

/// out(1 x m) += row(1 x n) * mat(m x n)^T
inline void add_row_times_matrix_t(const double* row, const Matrix& mat, double* out) {
    for (std::size_t i = 0; i < mat.rows; ++i) {
        const double* m = mat.row_ptr(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < mat.cols; ++j) acc += row[j] * m[j];
        out[i] += acc;
    }
}

/// grad(m x n) += col(m x 1) * row(1 x n)   (outer product accumulate)
inline void add_outer(const double* col, std::size_t m, const double* row, std::size_t n,
                      Matrix& grad) {
    assert(grad.rows == m && grad.cols == n);
    for (std::size_t i = 0; i < m; ++i) {
        const double c = col[i];
        if (c == 0.0) continue;
        double* g = grad.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) g[j] += c * row[j];
    }
}

}  // namespace gracefill
