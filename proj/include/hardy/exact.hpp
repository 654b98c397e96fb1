#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hardy {

using Rational = mpq_class;

/// Gaussian integer with overflow-checked int64 parts.
struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussInt conj() const { return {re, checked_neg(im)}; }
  double abs() const;
  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  static std::int64_t checked_add(std::int64_t a, std::int64_t b);
  static std::int64_t checked_sub(std::int64_t a, std::int64_t b);
  static std::int64_t checked_mul(std::int64_t a, std::int64_t b);
  static std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

  friend bool operator==(const GaussInt&, const GaussInt&) = default;
};

GaussInt operator+(const GaussInt& a, const GaussInt& b);
GaussInt operator-(const GaussInt& a, const GaussInt& b);
GaussInt operator-(const GaussInt& a);
GaussInt operator*(const GaussInt& a, const GaussInt& b);
inline GaussInt& operator+=(GaussInt& a, const GaussInt& b) { return a = a + b; }
inline GaussInt& operator-=(GaussInt& a, const GaussInt& b) { return a = a - b; }

/// Element of Q(i) with exact rational parts.
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(long r) : re(r), im(0) {}
  ComplexRational(int r) : re(r), im(0) {}
  ComplexRational(const GaussInt& g)
      : re(static_cast<long>(g.re)), im(static_cast<long>(g.im)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  ComplexRational conj() const { return {re, -im}; }
  Rational norm_squared() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  std::string str() const;

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

ComplexRational operator+(const ComplexRational& a, const ComplexRational& b);
ComplexRational operator-(const ComplexRational& a, const ComplexRational& b);
ComplexRational operator-(const ComplexRational& a);
ComplexRational operator*(const ComplexRational& a, const ComplexRational& b);
ComplexRational operator/(const ComplexRational& a, const ComplexRational& b);
inline ComplexRational& operator+=(ComplexRational& a, const ComplexRational& b) {
  return a = a + b;
}
inline ComplexRational& operator-=(ComplexRational& a, const ComplexRational& b) {
  return a = a - b;
}
inline ComplexRational& operator*=(ComplexRational& a, const ComplexRational& b) {
  return a = a * b;
}

/// Dense row-major matrix over an arbitrary ring-like scalar.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t size) {
    Matrix result(size, size);
    for (std::size_t i = 0; i < size; ++i) result(i, i) = T(1);
    return result;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix<T> result(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const T& left = a(i, l);
      if (left == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) result(i, j) += left * b(l, j);
    }
  return result;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix<T> result = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) result(i, j) += b(i, j);
  return result;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix<T> result = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) result(i, j) -= b(i, j);
  return result;
}

template <class T, class S>
Matrix<T> scaled(const Matrix<T>& a, const S& factor) {
  Matrix<T> result = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) result(i, j) = a(i, j) * T(factor);
  return result;
}

/// Conjugate transpose.
Matrix<GaussInt> adjoint(const Matrix<GaussInt>& a);

/// Largest entry modulus; zero iff the matrix is exactly zero.
double max_abs_entry(const Matrix<GaussInt>& a);

Matrix<ComplexRational> to_rational(const Matrix<GaussInt>& a);

/// Basis of the right null space, computed by exact reduced row echelon form.
std::vector<std::vector<ComplexRational>> nullspace(Matrix<ComplexRational> a);

/// Parses "3", "-0.25", "7/4" or "1e-3" into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace hardy
