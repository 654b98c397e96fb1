#include "hardy/angular.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

#include "hardy/quadrature.hpp"

namespace hardy {
namespace {

void check_dims(const CliffordRep& rep, const PolySpinor& p, const char* what) {
  if (rep.n != p.n() || rep.m != p.m())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch between rep and spinor");
}

/// (x . sigma) q.
PolySpinor apply_position(const CliffordRep& rep, const PolySpinor& q) {
  PolySpinor out(q.n(), q.m());
  for (int i = 0; i < rep.n; ++i) out += q.apply_matrix(rep.generators[i]).times_variable(i);
  return out;
}

Matrix<ComplexRational> operator_matrix(int n, int m, int degree,
                                        const std::function<PolySpinor(const PolySpinor&)>& op) {
  const auto monomials = monomials_of_degree(n, degree);
  const std::size_t dim = monomials.size() * static_cast<std::size_t>(m);
  Matrix<ComplexRational> mat(dim, dim);
  for (std::size_t i = 0; i < monomials.size(); ++i)
    for (int s = 0; s < m; ++s) {
      const auto column = coordinates(op(PolySpinor::basis_monomial(n, m, monomials[i], s)), degree);
      const std::size_t c = i * m + s;
      for (std::size_t r = 0; r < dim; ++r) mat(r, c) = column[r];
    }
  return mat;
}

}  // namespace

PolySpinor apply_dirac(const CliffordRep& rep, const PolySpinor& p) {
  check_dims(rep, p, "apply_dirac");
  PolySpinor out(p.n(), p.m());
  for (int i = 0; i < rep.n; ++i) out += p.derivative(i).apply_matrix(rep.generators[i]);
  return out;
}

PolySpinor apply_L(const CliffordRep& rep, const PolySpinor& p) {
  check_dims(rep, p, "apply_L");
  PolySpinor out(p.n(), p.m());
  for (int j = 0; j < rep.n; ++j)
    for (int k = j + 1; k < rep.n; ++k) {
      PolySpinor rotation = p.derivative(k).times_variable(j) - p.derivative(j).times_variable(k);
      out += rotation.apply_matrix(rep.generators[j] * rep.generators[k]);
    }
  return out;
}

PolySpinor apply_sphere_laplacian(const PolySpinor& p) {
  if (!p.is_homogeneous()) throw std::invalid_argument("apply_sphere_laplacian: input not homogeneous");
  const int d = std::max(p.degree(), 0);
  return times_radius_squared(laplacian(p)) - p.scaled(ComplexRational(d * (d + p.n() - 2)));
}

VerificationReport verify_polar_identity(const CliffordRep& rep, const PolySpinor& p) {
  check_dims(rep, p, "verify_polar_identity");
  if (!p.is_homogeneous()) throw std::invalid_argument("verify_polar_identity: input not homogeneous");
  const PolySpinor lhs = times_radius_squared(apply_dirac(rep, p));
  const PolySpinor rhs = apply_position(rep, euler_operator(p) + apply_L(rep, p));
  const PolySpinor diff = lhs - rhs;
  VerificationReport report("verify_polar_identity");
  report.add("polar_factorization", static_cast<double>(diff.terms().size()), 0.0,
             {{"n", p.n()}, {"degree", p.degree()}, {"terms", p.terms().size()}},
             {{"mismatched_terms", diff.terms().size()}});
  return report;
}

Matrix<ComplexRational> L_matrix(const CliffordRep& rep, int degree) {
  return operator_matrix(rep.n, rep.m, degree, [&](const PolySpinor& p) { return apply_L(rep, p); });
}

Matrix<ComplexRational> sphere_laplacian_matrix(int n, int m, int degree) {
  return operator_matrix(n, m, degree, [](const PolySpinor& p) { return apply_sphere_laplacian(p); });
}

VerificationReport verify_beltrami_relation(const CliffordRep& rep, int degree) {
  if (degree < 0) throw std::invalid_argument("verify_beltrami_relation: negative degree");
  const auto L = L_matrix(rep, degree);
  const auto delta_s = sphere_laplacian_matrix(rep.n, rep.m, degree);
  const auto residual = L * L - scaled(L, ComplexRational(rep.n - 2)) + delta_s;
  std::size_t nonzero = 0;
  for (const auto& e : residual.data()) nonzero += e.is_zero() ? 0 : 1;
  VerificationReport report("verify_beltrami_relation");
  report.add("L^2-(n-2)L+Delta_S", static_cast<double>(nonzero), 0.0,
             {{"n", rep.n}, {"m", rep.m}, {"degree", degree}},
             {{"matrix_size", L.rows()}, {"nonzero_entries", nonzero}});
  return report;
}

bool is_admissible(int n, int k) { return k < 1 || k > n - 2; }

std::vector<int> admissible_spectrum(int n, int k_lo, int k_hi) {
  if (k_lo > k_hi) throw std::invalid_argument("admissible_spectrum: k_lo > k_hi");
  std::vector<int> out;
  for (int k = k_lo; k <= k_hi; ++k)
    if (is_admissible(n, k)) out.push_back(k);
  return out;
}

std::vector<int> AngularSpectrum::eigenvalues() const {
  std::set<int> values;
  for (const auto& e : entries) values.insert(e.eigenvalue);
  return {values.begin(), values.end()};
}

int AngularSpectrum::multiplicity(int k) const {
  int total = 0;
  for (const auto& e : entries)
    if (e.eigenvalue == k) total += e.multiplicity();
  return total;
}

std::vector<PolySpinor> AngularSpectrum::eigenbasis(int k) const {
  std::vector<PolySpinor> out;
  for (const auto& e : entries)
    if (e.eigenvalue == k) out.insert(out.end(), e.basis.begin(), e.basis.end());
  return out;
}

bool AngularSpectrum::complete() const {
  return std::all_of(degrees.begin(), degrees.end(),
                     [](const DegreeSummary& d) { return d.found == d.dimension; });
}

AngularSpectrum spectrum_bruteforce(const CliffordRep& rep, int degree_cap, std::size_t max_basis) {
  if (degree_cap < 0) throw std::invalid_argument("spectrum_bruteforce: negative degree cap");
  AngularSpectrum spectrum;
  spectrum.n = rep.n;
  spectrum.m = rep.m;
  spectrum.degree_cap = degree_cap;
  for (int d = 0; d <= degree_cap; ++d) {
    const std::size_t dim = monomials_of_degree(rep.n, d).size() * static_cast<std::size_t>(rep.m);
    if (dim > max_basis)
      throw std::length_error("spectrum_bruteforce: degree " + std::to_string(d) + " basis has " +
                              std::to_string(dim) + " elements, above the cap");
  }

  for (int d = 0; d <= degree_cap; ++d) {
    const auto L = L_matrix(rep, d);
    DegreeSummary summary{d, static_cast<int>(L.rows()), 0};
    const int window = d + rep.n;
    for (int k = -window; k <= window && summary.found < summary.dimension; ++k) {
      auto shifted = L;
      for (std::size_t i = 0; i < L.rows(); ++i) shifted(i, i) -= ComplexRational(k);
      auto kernel = nullspace(std::move(shifted));
      if (kernel.empty()) continue;
      SpectrumEntry entry{d, k, {}};
      for (const auto& v : kernel) {
        PolySpinor p = from_coordinates(rep.n, rep.m, d, v);
        if (!(apply_L(rep, p) == p.scaled(ComplexRational(k))))
          throw std::logic_error("spectrum_bruteforce: kernel vector is not an eigenvector");
        entry.basis.push_back(std::move(p));
      }
      summary.found += entry.multiplicity();
      spectrum.entries.push_back(std::move(entry));
    }
    spectrum.degrees.push_back(summary);
  }
  return spectrum;
}

json to_json(const AngularSpectrum& spectrum, bool include_basis) {
  json entries = json::array();
  for (const auto& e : spectrum.entries) {
    json item = {{"degree", e.degree}, {"eigenvalue", e.eigenvalue}, {"multiplicity", e.multiplicity()}};
    if (include_basis) {
      json basis = json::array();
      for (const auto& p : e.basis) {
        json terms = json::array();
        for (const auto& [alpha, coeff] : p.terms()) {
          json c = json::array();
          for (const auto& z : coeff) c.push_back({z.re.get_str(), z.im.get_str()});
          terms.push_back({{"exponents", alpha}, {"coefficient", c}});
        }
        basis.push_back(std::move(terms));
      }
      item["basis"] = std::move(basis);
    }
    entries.push_back(std::move(item));
  }
  json degrees = json::array();
  for (const auto& d : spectrum.degrees)
    degrees.push_back({{"degree", d.degree}, {"dimension", d.dimension}, {"found", d.found}});
  return {{"n", spectrum.n},
          {"m", spectrum.m},
          {"degree_cap", spectrum.degree_cap},
          {"eigenvalues", spectrum.eigenvalues()},
          {"complete", spectrum.complete()},
          {"degrees", std::move(degrees)},
          {"entries", std::move(entries)}};
}

SphereQuadrature SphereQuadrature::for_degree(int n, int exact_degree) {
  if (n != 2 && n != 3) throw std::invalid_argument("SphereQuadrature: only n in {2, 3} is supported");
  if (exact_degree < 0) throw std::invalid_argument("SphereQuadrature: negative degree");
  SphereQuadrature quad;
  quad.n_ = n;
  const int azimuth = exact_degree + 2;
  const double dphi = 2.0 * std::numbers::pi / azimuth;
  if (n == 2) {
    for (int j = 0; j < azimuth; ++j) {
      quad.points_.push_back({std::cos(j * dphi), std::sin(j * dphi), 0.0});
      quad.weights_.push_back(dphi);
    }
    return quad;
  }
  const QuadratureRule polar = gauss_legendre(exact_degree / 2 + 2);
  for (std::size_t i = 0; i < polar.nodes.size(); ++i) {
    const double z = polar.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < azimuth; ++j) {
      quad.points_.push_back({s * std::cos(j * dphi), s * std::sin(j * dphi), z});
      quad.weights_.push_back(polar.weights[i] * dphi);
    }
  }
  return quad;
}

ModeBasis orthonormal_mode_basis(const AngularSpectrum& spectrum, const SphereQuadrature& quad, int k) {
  if (quad.n() != spectrum.n) throw std::invalid_argument("orthonormal_mode_basis: dimension mismatch");
  const auto sources = spectrum.eigenbasis(k);
  if (sources.empty())
    throw std::invalid_argument("orthonormal_mode_basis: eigenvalue " + std::to_string(k) +
                                " not in the computed spectrum");
  const int m = spectrum.m;
  const std::size_t Q = quad.size();
  auto inner = [&](const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
    std::complex<double> acc = 0.0;
    for (std::size_t q = 0; q < Q; ++q)
      for (int s = 0; s < m; ++s) acc += quad.weight(q) * std::conj(a[q * m + s]) * b[q * m + s];
    return acc;
  };

  ModeBasis basis;
  basis.k = k;
  for (const auto& p : sources) {
    const NumericPolySpinor numeric(p);
    std::vector<std::complex<double>> v(Q * m);
    for (std::size_t q = 0; q < Q; ++q) numeric.evaluate(quad.point(q).data(), v.data() + q * m);
    const double original = std::sqrt(inner(v, v).real());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : basis.samples) {
        const auto c = inner(e, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * e[i];
      }
    const double residual = std::sqrt(inner(v, v).real());
    if (residual <= 1e-9 * original) continue;
    basis.condition = std::max(basis.condition, original / residual);
    for (auto& z : v) z /= residual;
    basis.samples.push_back(std::move(v));
  }
  if (basis.samples.empty()) throw std::runtime_error("orthonormal_mode_basis: degenerate quadrature");
  return basis;
}

ModeProjection mode_project(const AngularSpectrum& spectrum, const SphereQuadrature& quad,
                            const std::vector<std::vector<std::complex<double>>>& samples, int k) {
  ModeProjection projection;
  projection.basis = orthonormal_mode_basis(spectrum, quad, k);
  const int m = spectrum.m;
  for (const auto& u : samples) {
    if (u.size() != quad.size() * static_cast<std::size_t>(m))
      throw std::invalid_argument("mode_project: sample layout does not match quadrature");
    std::vector<std::complex<double>> coeffs;
    for (const auto& e : projection.basis.samples) {
      std::complex<double> acc = 0.0;
      for (std::size_t q = 0; q < quad.size(); ++q)
        for (int s = 0; s < m; ++s) acc += quad.weight(q) * std::conj(e[q * m + s]) * u[q * m + s];
      coeffs.push_back(acc);
    }
    projection.coefficients.push_back(std::move(coeffs));
  }
  return projection;
}

}  // namespace hardy
