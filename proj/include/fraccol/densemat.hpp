#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace fraccol {

/// Row-major dense matrix of doubles.
class DenseMatrix {
  public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    /// Largest absolute entry.
    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Maximum absolute row sum.
    double norm_inf() const {
        double m = 0.0;
        for (int i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
            m = std::max(m, s);
        }
        return m;
    }

    DenseMatrix transposed() const {
        DenseMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

  private:
    int rows_, cols_;
    std::vector<double> a_;
};

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

}  // namespace fraccol
