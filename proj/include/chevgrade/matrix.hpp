#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chevgrade/exact.hpp"

namespace chevgrade {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (x != 0) return false;
    }
    return true;
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw ArgumentError("matrix product: dimension mismatch");
    RationalMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b(k, j) != 0) out(i, j) += x * b(k, j);
        }
      }
    }
    return out;
  }

  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ArgumentError("matrix sum: dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ArgumentError("matrix difference: dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend RationalMatrix operator*(const Rational& s, RationalMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Rational trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  /// Gauss-Jordan inverse; nullopt when singular.
  std::optional<RationalMatrix> inverse() const {
    if (rows_ != cols_) throw ArgumentError("inverse of a non-square matrix");
    const std::size_t n = rows_;
    RationalMatrix a = *this;
    RationalMatrix inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a(p, c) == 0) ++p;
      if (p == n) return std::nullopt;
      if (p != c) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a(p, j), a(c, j));
          std::swap(inv(p, j), inv(c, j));
        }
      }
      Rational s = 1 / a(c, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(c, j) *= s;
        inv(c, j) *= s;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a(r, c) == 0) continue;
        Rational f = a(r, c);
        for (std::size_t j = 0; j < n; ++j) {
          if (a(c, j) != 0) a(r, j) -= f * a(c, j);
          if (inv(c, j) != 0) inv(r, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

  Rational determinant() const {
    if (rows_ != cols_) throw ArgumentError("determinant of a non-square matrix");
    const std::size_t n = rows_;
    RationalMatrix a = *this;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a(p, c) == 0) ++p;
      if (p == n) return 0;
      if (p != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
        det = -det;
      }
      det *= a(c, c);
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a(r, c) == 0) continue;
        Rational f = a(r, c) / a(c, c);
        for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      }
    }
    return det;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace chevgrade
