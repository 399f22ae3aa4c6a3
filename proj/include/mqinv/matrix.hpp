#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mqinv/polynomial.hpp"
#include "mqinv/scalar.hpp"

namespace mqinv {

/// Dense row-major matrix over a ring element type (Scalar or Polynomial).
/// Indices are 0-based; the 1-based (i,j) of the math lives in Variable.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix out;
    out.rows_ = cols_;
    out.cols_ = rows_;
    out.data_.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j) {
      for (std::size_t i = 0; i < rows_; ++i) out.data_.push_back((*this)(i, j));
    }
    return out;
  }

  Matrix operator-() const {
    Matrix out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
  }

  Matrix& operator+=(const Matrix& rhs) {
    require_same_shape(rhs, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& rhs) {
    require_same_shape(rhs, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  /// Requires cols() >= 1 on the left factor so the zero element can be formed.
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
    }
    if (a.cols_ == 0) throw std::invalid_argument("matrix product with an empty inner dimension");
    Matrix out;
    out.rows_ = a.rows_;
    out.cols_ = b.cols_;
    out.data_.reserve(a.rows_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        T acc = a(i, 0) * b(0, j);
        for (std::size_t k = 1; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
        out.data_.push_back(std::move(acc));
      }
    }
    return out;
  }

  template <class S>
  Matrix& scale(const S& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  bool operator==(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  /// Sub-matrix on the given row and column index lists.
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Matrix out;
    out.rows_ = rows.size();
    out.cols_ = cols.size();
    out.data_.reserve(rows.size() * cols.size());
    for (auto i : rows) {
      for (auto j : cols) out.data_.push_back((*this)(i, j));
    }
    return out;
  }

 private:
  void require_same_shape(const Matrix& rhs, const char* op) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
      throw std::invalid_argument(std::string("matrix ") + op + " shape mismatch: " + shape() + " vs " + rhs.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ScalarMatrix = Matrix<Scalar>;
using PolyMatrix = Matrix<Polynomial>;

/// E(n).
ScalarMatrix identity_matrix(Field field, std::size_t n);
/// J(n) = [[0, E(n/2)], [-E(n/2), 0]]; n must be even.
ScalarMatrix symplectic_form(Field field, std::size_t n);
ScalarMatrix zero_matrix(Field field, std::size_t rows, std::size_t cols);
ScalarMatrix diagonal_matrix(const std::vector<Scalar>& diagonal);
ScalarMatrix random_matrix(Field field, std::size_t rows, std::size_t cols, std::mt19937_64& rng);

PolyMatrix to_poly(const ScalarMatrix& m);
ScalarMatrix evaluate(const PolyMatrix& m, const Assignment& values);
/// Defined only when every entry is constant.
ScalarMatrix constant_values(const PolyMatrix& m);
bool is_constant(const PolyMatrix& m);

ScalarMatrix to_field(const ScalarMatrix& m, Field target);
PolyMatrix to_field(const PolyMatrix& m, Field target);

// --- determinants and characteristic coefficients --------------------------

/// Fraction-free (Bareiss) elimination; exact over any field.
Scalar det(const ScalarMatrix& m);
/// Laplace expansion along rows, memoized on the remaining column subset.
Polynomial det(const PolyMatrix& m);

/// sigma_k: sum of the principal k x k minors (division-free; valid in any characteristic).
Scalar sigma_k(const ScalarMatrix& m, int k);
Polynomial sigma_k(const PolyMatrix& m, int k);

/// Throws std::domain_error if singular.
ScalarMatrix inverse(const ScalarMatrix& m);

std::string to_string(const ScalarMatrix& m);

}  // namespace mqinv
