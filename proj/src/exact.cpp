#include "hardy/exact.hpp"

#include <cmath>
#include <sstream>

namespace hardy {

std::int64_t GaussInt::checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("GaussInt overflow");
  return out;
}

std::int64_t GaussInt::checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw std::overflow_error("GaussInt overflow");
  return out;
}

std::int64_t GaussInt::checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("GaussInt overflow");
  return out;
}

double GaussInt::abs() const { return std::hypot(static_cast<double>(re), static_cast<double>(im)); }

GaussInt operator+(const GaussInt& a, const GaussInt& b) {
  return {GaussInt::checked_add(a.re, b.re), GaussInt::checked_add(a.im, b.im)};
}

GaussInt operator-(const GaussInt& a, const GaussInt& b) {
  return {GaussInt::checked_sub(a.re, b.re), GaussInt::checked_sub(a.im, b.im)};
}

GaussInt operator-(const GaussInt& a) { return GaussInt{} - a; }

GaussInt operator*(const GaussInt& a, const GaussInt& b) {
  using G = GaussInt;
  return {G::checked_sub(G::checked_mul(a.re, b.re), G::checked_mul(a.im, b.im)),
          G::checked_add(G::checked_mul(a.re, b.im), G::checked_mul(a.im, b.re))};
}

std::string ComplexRational::str() const {
  std::ostringstream out;
  out << re.get_str();
  if (sgn(im) >= 0) out << '+';
  out << im.get_str() << 'i';
  return out.str();
}

ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
  return {a.re - b.re, a.im - b.im};
}

ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }

ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  Rational denom = b.norm_squared();
  if (sgn(denom) == 0) throw std::domain_error("ComplexRational: division by zero");
  return {(a.re * b.re + a.im * b.im) / denom, (a.im * b.re - a.re * b.im) / denom};
}

Matrix<GaussInt> adjoint(const Matrix<GaussInt>& a) {
  Matrix<GaussInt> result(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) result(j, i) = a(i, j).conj();
  return result;
}

double max_abs_entry(const Matrix<GaussInt>& a) {
  double worst = 0.0;
  for (const auto& entry : a.data()) worst = std::max(worst, entry.abs());
  return worst;
}

Matrix<ComplexRational> to_rational(const Matrix<GaussInt>& a) {
  Matrix<ComplexRational> result(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) result(i, j) = ComplexRational(a(i, j));
  return result;
}

std::vector<std::vector<ComplexRational>> nullspace(Matrix<ComplexRational> a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t found = rows;
    for (std::size_t r = pivot_row; r < rows; ++r)
      if (!a(r, c).is_zero()) {
        found = r;
        break;
      }
    if (found == rows) continue;
    if (found != pivot_row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(found, j), a(pivot_row, j));
    const ComplexRational inv = ComplexRational(1) / a(pivot_row, c);
    for (std::size_t j = c; j < cols; ++j)
      if (!a(pivot_row, j).is_zero()) a(pivot_row, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || a(r, c).is_zero()) continue;
      const ComplexRational factor = a(r, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!a(pivot_row, j).is_zero()) a(r, j) -= factor * a(pivot_row, j);
    }
    pivot_cols.push_back(c);
    ++pivot_row;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<ComplexRational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<ComplexRational> v(cols);
    v[free] = ComplexRational(1);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
  }
  std::string mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    std::size_t used = 0;
    exponent = std::stol(text.substr(e + 1), &used);
    if (used != text.size() - e - 1) throw std::invalid_argument("bad number '" + text + "'");
  }
  bool negative = false;
  std::size_t pos = 0;
  if (pos < mantissa.size() && (mantissa[pos] == '-' || mantissa[pos] == '+')) {
    negative = mantissa[pos] == '-';
    ++pos;
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  for (; pos < mantissa.size(); ++pos) {
    char ch = mantissa[pos];
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_point) ++fraction_digits;
    } else {
      throw std::invalid_argument("bad number '" + text + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad number '" + text + "'");
  Rational value(mpz_class(digits, 10));
  exponent -= fraction_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0)
    value *= scale;
  else
    value /= scale;
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace hardy
