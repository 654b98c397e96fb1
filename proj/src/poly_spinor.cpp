#include "hardy/poly_spinor.hpp"

#include <numeric>
#include <stdexcept>

namespace hardy {
namespace {

bool all_zero(const Spinor& s) {
  for (const auto& c : s)
    if (!c.is_zero()) return false;
  return true;
}

void enumerate(int n, int remaining, int var, MultiIndex& current, std::vector<MultiIndex>& out) {
  if (var == n - 1) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    enumerate(n, remaining - e, var + 1, current, out);
  }
}

}  // namespace

PolySpinor::PolySpinor(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1) throw std::invalid_argument("PolySpinor: n and m must be positive");
}

PolySpinor PolySpinor::basis_monomial(int n, int m, const MultiIndex& alpha, int s) {
  Spinor coeff(m);
  coeff.at(static_cast<std::size_t>(s)) = ComplexRational(1);
  return monomial(n, m, alpha, std::move(coeff));
}

PolySpinor PolySpinor::monomial(int n, int m, const MultiIndex& alpha, Spinor coefficient) {
  PolySpinor p(n, m);
  p.add_term(alpha, coefficient);
  return p;
}

int PolySpinor::degree() const {
  int deg = -1;
  for (const auto& [alpha, coeff] : terms_)
    deg = std::max(deg, std::accumulate(alpha.begin(), alpha.end(), 0));
  return deg;
}

bool PolySpinor::is_homogeneous() const {
  const int deg = degree();
  for (const auto& [alpha, coeff] : terms_)
    if (std::accumulate(alpha.begin(), alpha.end(), 0) != deg) return false;
  return true;
}

void PolySpinor::add_term(const MultiIndex& alpha, const Spinor& coefficient) {
  if (static_cast<int>(alpha.size()) != n_) throw std::invalid_argument("PolySpinor: bad multi-index");
  if (static_cast<int>(coefficient.size()) != m_)
    throw std::invalid_argument("PolySpinor: coefficient length differs from m");
  for (int e : alpha)
    if (e < 0) throw std::invalid_argument("PolySpinor: negative exponent");
  if (all_zero(coefficient)) return;
  auto [it, inserted] = terms_.try_emplace(alpha, coefficient);
  if (inserted) return;
  for (int s = 0; s < m_; ++s) it->second[s] += coefficient[s];
  if (all_zero(it->second)) terms_.erase(it);
}

PolySpinor PolySpinor::derivative(int variable) const {
  PolySpinor out(n_, m_);
  for (const auto& [alpha, coeff] : terms_) {
    const int e = alpha.at(static_cast<std::size_t>(variable));
    if (e == 0) continue;
    MultiIndex lowered = alpha;
    --lowered[variable];
    Spinor c = coeff;
    for (auto& entry : c) entry *= ComplexRational(e);
    out.add_term(lowered, c);
  }
  return out;
}

PolySpinor PolySpinor::times_variable(int variable) const {
  PolySpinor out(n_, m_);
  for (const auto& [alpha, coeff] : terms_) {
    MultiIndex raised = alpha;
    ++raised.at(static_cast<std::size_t>(variable));
    out.terms_.emplace(std::move(raised), coeff);
  }
  return out;
}

PolySpinor PolySpinor::apply_matrix(const Matrix<GaussInt>& matrix) const {
  if (static_cast<int>(matrix.rows()) != m_ || static_cast<int>(matrix.cols()) != m_)
    throw std::invalid_argument("PolySpinor::apply_matrix: matrix is not m x m");
  PolySpinor out(n_, m_);
  for (const auto& [alpha, coeff] : terms_) {
    Spinor image(m_);
    for (int r = 0; r < m_; ++r)
      for (int c = 0; c < m_; ++c)
        if (!matrix(r, c).is_zero() && !coeff[c].is_zero())
          image[r] += ComplexRational(matrix(r, c)) * coeff[c];
    out.add_term(alpha, image);
  }
  return out;
}

PolySpinor PolySpinor::scaled(const ComplexRational& factor) const {
  PolySpinor out(n_, m_);
  if (factor.is_zero()) return out;
  for (const auto& [alpha, coeff] : terms_) {
    Spinor c = coeff;
    for (auto& entry : c) entry *= factor;
    out.terms_.emplace(alpha, std::move(c));
  }
  return out;
}

void PolySpinor::check_compatible(const PolySpinor& other) const {
  if (n_ != other.n_ || m_ != other.m_)
    throw std::invalid_argument("PolySpinor: dimension mismatch");
}

PolySpinor& PolySpinor::operator+=(const PolySpinor& other) {
  check_compatible(other);
  for (const auto& [alpha, coeff] : other.terms_) add_term(alpha, coeff);
  return *this;
}

PolySpinor& PolySpinor::operator-=(const PolySpinor& other) {
  check_compatible(other);
  for (const auto& [alpha, coeff] : other.terms_) {
    Spinor neg = coeff;
    for (auto& entry : neg) entry = -entry;
    add_term(alpha, neg);
  }
  return *this;
}

std::vector<std::complex<double>> PolySpinor::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("PolySpinor::evaluate: bad point");
  std::vector<std::complex<double>> out(m_);
  NumericPolySpinor(*this).evaluate(x.data(), out.data());
  return out;
}

std::vector<MultiIndex> monomials_of_degree(int n, int d) {
  if (n < 1 || d < 0) throw std::invalid_argument("monomials_of_degree: bad arguments");
  std::vector<MultiIndex> out;
  MultiIndex current(n, 0);
  enumerate(n, d, 0, current, out);
  return out;
}

PolySpinor laplacian(const PolySpinor& p) {
  PolySpinor out(p.n(), p.m());
  for (int i = 0; i < p.n(); ++i) out += p.derivative(i).derivative(i);
  return out;
}

PolySpinor times_radius_squared(const PolySpinor& p) {
  PolySpinor out(p.n(), p.m());
  for (int i = 0; i < p.n(); ++i) out += p.times_variable(i).times_variable(i);
  return out;
}

PolySpinor euler_operator(const PolySpinor& p) {
  PolySpinor out(p.n(), p.m());
  for (int i = 0; i < p.n(); ++i) out += p.derivative(i).times_variable(i);
  return out;
}

std::vector<ComplexRational> coordinates(const PolySpinor& p, int degree) {
  const auto monomials = monomials_of_degree(p.n(), degree);
  std::map<MultiIndex, std::size_t> index;
  for (std::size_t i = 0; i < monomials.size(); ++i) index.emplace(monomials[i], i);
  std::vector<ComplexRational> coords(monomials.size() * static_cast<std::size_t>(p.m()));
  for (const auto& [alpha, coeff] : p.terms()) {
    auto it = index.find(alpha);
    if (it == index.end()) throw std::invalid_argument("coordinates: term of wrong degree");
    for (int s = 0; s < p.m(); ++s) coords[it->second * p.m() + s] = coeff[s];
  }
  return coords;
}

PolySpinor from_coordinates(int n, int m, int degree, std::span<const ComplexRational> coords) {
  const auto monomials = monomials_of_degree(n, degree);
  if (coords.size() != monomials.size() * static_cast<std::size_t>(m))
    throw std::invalid_argument("from_coordinates: length mismatch");
  PolySpinor p(n, m);
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    Spinor coeff(coords.begin() + static_cast<std::ptrdiff_t>(i * m),
                 coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
    p.add_term(monomials[i], coeff);
  }
  return p;
}

NumericPolySpinor::NumericPolySpinor(const PolySpinor& p) : n_(p.n()), m_(p.m()) {
  for (const auto& [alpha, coeff] : p.terms()) {
    exponents_.insert(exponents_.end(), alpha.begin(), alpha.end());
    for (const auto& c : coeff) coeffs_.push_back(c.to_complex());
  }
}

void NumericPolySpinor::evaluate(const double* x, std::complex<double>* out) const {
  for (int s = 0; s < m_; ++s) out[s] = 0.0;
  const std::size_t terms = m_ == 0 ? 0 : coeffs_.size() / static_cast<std::size_t>(m_);
  for (std::size_t t = 0; t < terms; ++t) {
    double mono = 1.0;
    for (int i = 0; i < n_; ++i)
      for (int e = exponents_[t * n_ + i]; e > 0; --e) mono *= x[i];
    for (int s = 0; s < m_; ++s) out[s] += mono * coeffs_[t * m_ + s];
  }
}

}  // namespace hardy
