#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qck/dual.hpp"

namespace qck {

/// Small dense row-major matrix over an arbitrary scalar (double or nested
/// dual). Eigen is used for double-only work; this type carries the code
/// paths that must run under dual-number differentiation.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), T(0.0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    Mat r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    Mat r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    assert(a.cols_ == b.rows_);
    Mat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Mat operator*(const T& s, const Mat& a) {
    Mat r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = s * a.data_[k];
    return r;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

template <class T>
using Vec = std::vector<T>;

template <class T>
Vec<T> operator*(const Mat<T>& a, const Vec<T>& x) {
  Vec<T> y(static_cast<std::size_t>(a.rows()), T(0.0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

/// x·A·y
template <class T>
T bilinear(const Mat<T>& a, const Vec<T>& x, const Vec<T>& y) {
  T s(0.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += x[i] * a(i, j) * y[j];
  return s;
}

/// Solve A X = B by Gaussian elimination with partial pivoting on the real
/// value. Works for dual scalars; pivot choice never depends on
/// infinitesimal parts so derivatives stay exact.
template <class T>
Mat<T> solve(Mat<T> a, Mat<T> b) {
  const int n = a.rows();
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(a(col, col)));
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(value_of(a(r, col)));
      if (v > best) { best = v; piv = r; }
    }
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      for (int j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(piv, j));
    }
    T inv = T(1.0) / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      T f = a(r, col) * inv;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      for (int j = 0; j < b.cols(); ++j) b(r, j) -= f * b(col, j);
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    T inv = T(1.0) / a(col, col);
    for (int j = 0; j < b.cols(); ++j) {
      T s = b(col, j);
      for (int k = col + 1; k < n; ++k) s -= a(col, k) * b(k, j);
      b(col, j) = s * inv;
    }
  }
  return b;
}

template <class T>
Mat<T> inverse(const Mat<T>& a) {
  return solve(a, Mat<T>::identity(a.rows()));
}

template <class T>
Vec<T> solve(const Mat<T>& a, const Vec<T>& rhs) {
  Mat<T> b(a.rows(), 1);
  for (int i = 0; i < a.rows(); ++i) b(i, 0) = rhs[i];
  Mat<T> x = solve(a, b);
  Vec<T> out(static_cast<std::size_t>(a.rows()));
  for (int i = 0; i < a.rows(); ++i) out[i] = x(i, 0);
  return out;
}

/// Real parts of a dual-valued matrix.
template <class T>
Eigen::MatrixXd values(const Mat<T>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = value_of(m(i, j));
  return out;
}

inline Mat<double> to_mat(const Eigen::MatrixXd& m) {
  Mat<double> out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

template <class T>
Mat<T> lift(const Eigen::MatrixXd& m) {
  Mat<T> out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = T(m(i, j));
  return out;
}

}  // namespace qck
