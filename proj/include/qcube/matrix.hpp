#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace qcube {

/// Dense row-major matrix over an arbitrary ring element type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  T& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
      for (size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch");
    Matrix m(rows_, o.cols_);
    for (size_t r = 0; r < rows_; ++r)
      for (size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(r, k);
        if (a == T{}) continue;
        for (size_t c = 0; c < o.cols_; ++c) m(r, c) += a * o(k, c);
      }
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("Matrix: shape mismatch");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("Matrix: shape mismatch");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  T trace() const {
    T acc{};
    for (size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
    return acc;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (size_t r = 0; r < rows_; ++r)
      for (size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  /// Principal submatrix on the given (sorted or not) index list.
  Matrix submatrix(const std::vector<size_t>& row_idx,
                   const std::vector<size_t>& col_idx) const {
    Matrix m(row_idx.size(), col_idx.size());
    for (size_t r = 0; r < row_idx.size(); ++r)
      for (size_t c = 0; c < col_idx.size(); ++c)
        m(r, c) = (*this)(row_idx[r], col_idx[c]);
    return m;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;

template <class T>
Matrix<double> to_double(const Matrix<T>& a) {
  Matrix<double> m(a.rows(), a.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) {
      if constexpr (std::is_same_v<T, mpz_class>)
        m(r, c) = a(r, c).get_d();
      else
        m(r, c) = static_cast<double>(a(r, c));
    }
  return m;
}

/// Exact determinant by Bareiss fraction-free elimination (all interior
/// divisions are exact). Takes the matrix by value and destroys the copy.
inline mpz_class bareiss_determinant(Matrix<mpz_class> a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
  const size_t n = a.rows();
  if (n == 0) return 1;  // empty matrix, det 1 by convention
  mpz_class prev = 1;
  int sign = 1;
  mpz_class t1, t2;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      for (size_t c = k; c < n; ++c) std::swap(a(k, c), a(r, c));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        mpz_mul(t1.get_mpz_t(), a(k, k).get_mpz_t(), a(i, j).get_mpz_t());
        mpz_mul(t2.get_mpz_t(), a(i, k).get_mpz_t(), a(k, j).get_mpz_t());
        mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
        mpz_divexact(a(i, j).get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : mpz_class(-a(n - 1, n - 1));
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// returned in ascending order. Converges to ~1e-14 relative off-diagonal
/// mass well inside the sweep cap for the sizes this project uses (<= ~400).
inline std::vector<double> jacobi_eigenvalues(Matrix<double> a,
                                              int max_sweeps = 100) {
  if (a.rows() != a.cols()) throw std::invalid_argument("jacobi: not square");
  const size_t n = a.rows();
  if (n == 0) return {};
  double scale = 0.0;
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(a(r, c)));
  if (scale == 0.0) return std::vector<double>(n, 0.0);
  const double stop = 1e-15 * scale;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= stop) break;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= stop * 1e-2) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);
        double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          double arp = a(r, p), arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
      }
  }
  std::vector<double> eig(n);
  for (size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace qcube
