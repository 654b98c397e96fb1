#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "hardy/exact.hpp"

namespace hardy {

using MultiIndex = std::vector<int>;
using Spinor = std::vector<ComplexRational>;

/// Polynomial in n real variables with coefficients in Q(i)^m.
///
/// Terms are keyed by exponent multi-index; zero coefficient vectors are never
/// stored, so the zero polynomial has no terms and equality is structural.
class PolySpinor {
 public:
  PolySpinor(int n, int m);

  /// x^alpha * e_s.
  static PolySpinor basis_monomial(int n, int m, const MultiIndex& alpha, int s);
  static PolySpinor monomial(int n, int m, const MultiIndex& alpha, Spinor coefficient);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::map<MultiIndex, Spinor>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  /// The zero polynomial counts as homogeneous of every degree.
  bool is_homogeneous() const;

  /// Adds coefficient to the term x^alpha, dropping it if it cancels.
  void add_term(const MultiIndex& alpha, const Spinor& coefficient);

  PolySpinor derivative(int variable) const;
  PolySpinor times_variable(int variable) const;
  /// Left-multiplies every coefficient vector by an m x m matrix.
  PolySpinor apply_matrix(const Matrix<GaussInt>& matrix) const;
  PolySpinor scaled(const ComplexRational& factor) const;

  PolySpinor& operator+=(const PolySpinor& other);
  PolySpinor& operator-=(const PolySpinor& other);
  friend PolySpinor operator+(PolySpinor a, const PolySpinor& b) { return a += b; }
  friend PolySpinor operator-(PolySpinor a, const PolySpinor& b) { return a -= b; }
  friend bool operator==(const PolySpinor& a, const PolySpinor& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.terms_ == b.terms_;
  }

  std::vector<std::complex<double>> evaluate(std::span<const double> x) const;

 private:
  void check_compatible(const PolySpinor& other) const;

  int n_;
  int m_;
  std::map<MultiIndex, Spinor> terms_;
};

/// All exponent vectors of total degree d in n variables, in lexicographic order.
std::vector<MultiIndex> monomials_of_degree(int n, int d);

PolySpinor laplacian(const PolySpinor& p);
/// |x|^2 * p.
PolySpinor times_radius_squared(const PolySpinor& p);
/// x . grad p.
PolySpinor euler_operator(const PolySpinor& p);

/// Coordinates of a homogeneous degree-d polynomial in the basis
/// (monomial index) * m + spinor index; throws on terms of another degree.
std::vector<ComplexRational> coordinates(const PolySpinor& p, int degree);
PolySpinor from_coordinates(int n, int m, int degree, std::span<const ComplexRational> coords);

/// Floating-point copy for fast repeated evaluation.
class NumericPolySpinor {
 public:
  NumericPolySpinor() = default;
  explicit NumericPolySpinor(const PolySpinor& p);

  int n() const { return n_; }
  int m() const { return m_; }
  /// out must have length m.
  void evaluate(const double* x, std::complex<double>* out) const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<int> exponents_;                 // term-major, n per term
  std::vector<std::complex<double>> coeffs_;   // term-major, m per term
};

}  // namespace hardy
