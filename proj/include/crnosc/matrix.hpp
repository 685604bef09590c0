#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "crnosc/rational.hpp"

namespace crnosc {

/// Dense row-major matrix. Small by construction (n <= a handful of species).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RatMatrix = Matrix<Rational>;
using RealMatrix = Matrix<double>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix<T> c(a.rows(), b.cols(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

RatMatrix to_rational(const IntMatrix& m);
RealMatrix to_real(const IntMatrix& m);
RealMatrix to_real(const RatMatrix& m);

// Exact linear algebra over the rationals.

/// Rank by fraction-free (Bareiss) elimination.
std::size_t rank(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Indices of the first rows (in index order) that form a basis of the row space.
std::vector<std::size_t> row_basis(const RatMatrix& m);

/// Columns form a basis of {v : m v = 0}.
RatMatrix kernel(const RatMatrix& m);

/// Rows form a basis of {w : w^T m = 0}, each scaled to a primitive integer
/// vector whose first nonzero entry is positive.
RatMatrix left_kernel(const RatMatrix& m);

/// Some x with a x = b, or throws std::domain_error when inconsistent.
std::vector<Rational> solve_particular(const RatMatrix& a, const std::vector<Rational>& b);

Rational determinant(const RatMatrix& m);

/// Scale a rational vector to a primitive integer vector (sign preserved).
std::vector<Rational> primitive(const std::vector<Rational>& v);

// Floating point helpers for the small dense systems of the numeric modules.

/// Solves a x = b by partial-pivot Gaussian elimination; throws std::domain_error if singular.
std::vector<double> solve(RealMatrix a, std::vector<double> b);
double determinant(RealMatrix a);

}  // namespace crnosc
