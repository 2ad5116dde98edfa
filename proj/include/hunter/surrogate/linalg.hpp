#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hunter {

// Dense row-major matrix. Bias vectors are stored as 1xN matrices so that
// optimizer state, serialization and gradient checks can treat every
// parameter tensor uniformly.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }

    std::size_t size() const { return data.size(); }
    void zero() { std::fill(data.begin(), data.end(), 0.0); }
};

// y = A x
inline void matvec(const Matrix& a, const double* x, double* y) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) acc += arow[j] * x[j];
        y[i] = acc;
    }
}

// y += A x
inline void matvec_add(const Matrix& a, const double* x, double* y) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) acc += arow[j] * x[j];
        y[i] += acc;
    }
}

// y += A^T x  (x has a.rows entries, y has a.cols entries)
inline void matvec_transpose_add(const Matrix& a, const double* x, double* y) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.row(i);
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t j = 0; j < a.cols; ++j) y[j] += arow[j] * xi;
    }
}

// A += u v^T
inline void add_outer(Matrix& a, const double* u, const double* v) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        double* arow = a.row(i);
        const double ui = u[i];
        if (ui == 0.0) continue;
        for (std::size_t j = 0; j < a.cols; ++j) arow[j] += ui * v[j];
    }
}

inline void vec_add(double* y, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

} // namespace hunter
