#include "hardy/oracle.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hardy/constants.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {
namespace {

constexpr int kRadialPanels = 64;

/// Sums integrand(x, r, center, plus, minus) * h^n over lattice points with
/// r_inner < |x| < r_outer. Field values (width doubles per point) are
/// produced by eval(x, out) on rolling z-planes so memory stays O(W^2).
template <std::size_t K, class Eval, class Integrand>
std::array<double, K> lattice_sum(const AnnulusGrid& grid, int width, Eval&& eval, Integrand&& integrand) {
  const int n = grid.n;
  const double h = grid.h;
  const int M = static_cast<int>(std::ceil(grid.r_outer / h)) + 1;
  const int W = 2 * M + 1;
  const std::size_t plane_size = static_cast<std::size_t>(W) * W * width;
  auto fill = [&](std::vector<double>& plane, int l) {
    double x[3] = {0.0, 0.0, l * h};
    for (int j = 0; j < W; ++j) {
      x[1] = (j - M) * h;
      for (int i = 0; i < W; ++i) {
        x[0] = (i - M) * h;
        eval(x, plane.data() + (static_cast<std::size_t>(j) * W + i) * width);
      }
    }
  };
  auto at = [&](const std::vector<double>& plane, int i, int j) {
    return plane.data() + (static_cast<std::size_t>(j) * W + i) * width;
  };

  std::vector<double> prev(plane_size), cur(plane_size), next(plane_size);
  std::array<std::vector<double>, K> row_sums;
  std::array<std::vector<double>, K> row;
  for (auto& r : row) r.resize(W);
  const int l_lo = n == 3 ? -M + 1 : 0;
  const int l_hi = n == 3 ? M - 1 : 0;
  if (n == 3) {
    fill(prev, l_lo - 1);
    fill(cur, l_lo);
  } else {
    fill(cur, 0);
  }
  const double cell = std::pow(h, n);
  for (int l = l_lo; l <= l_hi; ++l) {
    if (n == 3) fill(next, l + 1);
    double x[3] = {0.0, 0.0, l * h};
    for (int j = 1; j < W - 1; ++j) {
      x[1] = (j - M) * h;
      std::size_t used = 0;
      for (int i = 1; i < W - 1; ++i) {
        x[0] = (i - M) * h;
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        if (!(r > grid.r_inner && r < grid.r_outer)) continue;
        const double* plus[3] = {at(cur, i + 1, j), at(cur, i, j + 1), n == 3 ? at(next, i, j) : nullptr};
        const double* minus[3] = {at(cur, i - 1, j), at(cur, i, j - 1), n == 3 ? at(prev, i, j) : nullptr};
        const std::array<double, K> values = integrand(x, r, at(cur, i, j), plus, minus);
        for (std::size_t c = 0; c < K; ++c) row[c][used] = values[c];
        ++used;
      }
      if (used > 0)
        for (std::size_t c = 0; c < K; ++c) row_sums[c].push_back(pairwise_sum(row[c].data(), used));
    }
    if (n == 3) {
      std::swap(prev, cur);
      std::swap(cur, next);
    }
  }
  std::array<double, K> out;
  for (std::size_t c = 0; c < K; ++c) out[c] = pairwise_sum(row_sums[c]) * cell;
  return out;
}

void check_support(double inner, double outer, const AnnulusGrid& grid) {
  if (inner < grid.r_inner || outer > grid.r_outer)
    throw std::out_of_range("test function support leaves the grid annulus");
}

/// r^p for integer p by repeated multiplication.
double int_power(double r, int p) {
  double out = 1.0;
  for (int i = 0; i < std::abs(p); ++i) out *= r;
  return p < 0 ? 1.0 / out : out;
}

}  // namespace

AnnulusGrid AnnulusGrid::make(int n, double r_inner, double r_outer, double h) {
  if (n != 2 && n != 3) throw std::invalid_argument("AnnulusGrid: n must be 2 or 3");
  if (!(r_inner > 0.0 && r_outer > r_inner)) throw std::invalid_argument("AnnulusGrid: need 0 < r_inner < r_outer");
  if (!(h > 0.0 && h < (r_outer - r_inner) / 10.0))
    throw std::invalid_argument("AnnulusGrid: need 0 < h < (r_outer - r_inner) / 10");
  return AnnulusGrid{n, r_inner, r_outer, h};
}

double sphere_norm_squared(const PolySpinor& psi) {
  const int d = std::max(psi.degree(), 0);
  const auto quad = SphereQuadrature::for_degree(psi.n(), 2 * d);
  const NumericPolySpinor eval(psi);
  std::vector<std::complex<double>> value(psi.m());
  std::vector<double> terms;
  for (std::size_t q = 0; q < quad.size(); ++q) {
    eval.evaluate(quad.point(q).data(), value.data());
    double s = 0.0;
    for (const auto& v : value) s += std::norm(v);
    terms.push_back(quad.weight(q) * s);
  }
  return pairwise_sum(terms);
}

SeparableTestFunction SeparableTestFunction::single_mode(const AngularSpectrum& spectrum, int k,
                                                         const BumpProfile& profile) {
  const SpectrumEntry* best = nullptr;
  for (const auto& entry : spectrum.entries)
    if (entry.eigenvalue == k && !entry.basis.empty() && (!best || entry.degree < best->degree)) best = &entry;
  if (!best) throw std::invalid_argument("single_mode: eigenvalue " + std::to_string(k) + " not in spectrum");
  SeparableTestFunction u(spectrum.n, spectrum.m);
  ModeTerm term{profile, k, best->basis.front(), 1.0};
  term.psi_scale = 1.0 / std::sqrt(sphere_norm_squared(term.psi));
  u.add_term(std::move(term));
  return u;
}

void SeparableTestFunction::add_term(ModeTerm term) {
  if (term.psi.n() != n_ || term.psi.m() != m_) throw std::invalid_argument("add_term: dimension mismatch");
  if (!term.psi.is_homogeneous()) throw std::invalid_argument("add_term: psi must be homogeneous");
  terms_.push_back(std::move(term));
}

double SeparableTestFunction::support_inner() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) r = std::min(r, t.profile.r_inner);
  return r;
}

double SeparableTestFunction::support_outer() const {
  double r = 0.0;
  for (const auto& t : terms_) r = std::max(r, t.profile.r_outer);
  return r;
}

double qb_cartesian(const CliffordRep& rep, const SeparableTestFunction& u, double b, const AnnulusGrid& grid) {
  if (rep.n != grid.n || u.n() != grid.n || u.m() != rep.m)
    throw std::invalid_argument("qb_cartesian: dimension mismatch");
  if (u.terms().empty()) return 0.0;
  check_support(u.support_inner(), u.support_outer(), grid);
  const int n = grid.n;
  const int m = rep.m;
  const int width = 2 * m;

  std::vector<std::vector<std::complex<double>>> sigma(n, std::vector<std::complex<double>>(m * m));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a)
      for (int c = 0; c < m; ++c) sigma[i][a * m + c] = rep.generators[i](a, c).to_complex();

  struct Numeric {
    BumpProfile profile;
    int degree;
    double scale;
    NumericPolySpinor psi;
  };
  std::vector<Numeric> terms;
  for (const auto& t : u.terms())
    terms.push_back({t.profile, std::max(t.psi.degree(), 0), t.psi_scale, NumericPolySpinor(t.psi)});
  std::vector<std::complex<double>> value(m);

  auto eval = [&](const double* x, double* out) {
    std::fill(out, out + width, 0.0);
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    for (const auto& t : terms) {
      if (!t.profile.inside(r)) continue;
      const double radial = t.profile.value(r) * t.scale * int_power(r, -t.degree);
      t.psi.evaluate(x, value.data());
      for (int s = 0; s < m; ++s) {
        out[2 * s] += radial * value[s].real();
        out[2 * s + 1] += radial * value[s].imag();
      }
    }
  };

  const double inv2h = 1.0 / (2.0 * grid.h);
  std::vector<std::complex<double>> diff(n * m);
  auto integrand = [&](const double*, double r, const double*, const double* const* plus,
                       const double* const* minus) {
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < m; ++s)
        diff[i * m + s] = {(plus[i][2 * s] - minus[i][2 * s]) * inv2h,
                           (plus[i][2 * s + 1] - minus[i][2 * s + 1]) * inv2h};
    double total = 0.0;
    for (int a = 0; a < m; ++a) {
      std::complex<double> d = 0.0;
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < m; ++c) d += sigma[i][a * m + c] * diff[i * m + c];
      total += std::norm(d);
    }
    return std::array<double, 1>{std::pow(r, -b) * total};
  };
  return lattice_sum<1>(grid, width, eval, integrand)[0];
}

double qb_polar(const SeparableTestFunction& u, int n, double b) {
  if (u.n() != n) throw std::invalid_argument("qb_polar: dimension mismatch");
  const auto& terms = u.terms();
  if (terms.empty()) return 0.0;
  const QuadratureRule rule = composite_gauss_legendre(u.support_inner(), u.support_outer(), kRadialPanels, 8);

  std::vector<double> total;
  for (std::size_t p = 0; p < terms.size(); ++p) {
    for (std::size_t q = 0; q < terms.size(); ++q) {
      if (terms[p].k != terms[q].k) continue;  // distinct eigenspaces are orthogonal on the sphere
      double gram;
      if (p == q) {
        gram = terms[p].psi_scale * terms[p].psi_scale * sphere_norm_squared(terms[p].psi);
      } else {
        // Re <psi_p, psi_q> from |a + b|^2 = |a|^2 + |b|^2 + 2 Re <a, b>.
        PolySpinor sum = terms[p].psi;
        const double sp = terms[p].psi_scale, sq = terms[q].psi_scale;
        if (terms[p].psi.degree() != terms[q].psi.degree())
          throw std::invalid_argument("qb_polar: same-mode terms must share the psi degree");
        sum += terms[q].psi;
        const double np = sphere_norm_squared(terms[p].psi), nq = sphere_norm_squared(terms[q].psi);
        gram = sp * sq * 0.5 * (sphere_norm_squared(sum) - np - nq);
      }
      const double potential = static_cast<double>(terms[p].k) * terms[p].k + (b + 2.0 - n) * terms[p].k;
      std::vector<double> radial;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = rule.nodes[i];
        const double fp = terms[p].profile.value(r), fq = terms[q].profile.value(r);
        const double dp = terms[p].profile.derivative(r), dq = terms[q].profile.derivative(r);
        radial.push_back(rule.weights[i] * std::pow(r, n - 1.0 - b) * (dp * dq + potential * fp * fq / (r * r)));
      }
      total.push_back(gram * pairwise_sum(radial));
    }
  }
  return pairwise_sum(total);
}

double ScalarTestFunction::value(const double* x, int n) const {
  double r2 = 0.0;
  for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
  const double r = std::sqrt(r2);
  if (!profile.inside(r)) return 0.0;
  return profile.value(r) * (1.0 + tilt * x[0] / r);
}

CknIdentityResult ckn_identity(double a, const ScalarTestFunction& u, const AnnulusGrid& grid) {
  check_support(u.profile.r_inner, u.profile.r_outer, grid);
  const int n = grid.n;
  const double s = a / 2.0;
  const double inv2h = 1.0 / (2.0 * grid.h);
  // Field layout: [u, u psi].
  auto eval = [&](const double* x, double* out) {
    out[0] = u.value(x, n);
    if (out[0] == 0.0) {
      out[1] = 0.0;
      return;
    }
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    out[1] = out[0] * std::pow(r, s);
  };
  const auto sums = lattice_sum<2>(grid, 2, eval,
                                   [&](const double*, double r, const double* center, const double* const* plus,
                                       const double* const* minus) {
                                     double grad_u = 0.0, grad_v = 0.0;
                                     for (int i = 0; i < n; ++i) {
                                       const double du = (plus[i][0] - minus[i][0]) * inv2h;
                                       const double dv = (plus[i][1] - minus[i][1]) * inv2h;
                                       grad_u += du * du;
                                       grad_v += dv * dv;
                                     }
                                     const double psi = std::pow(r, s);
                                     const double laplace_psi = s * (s + n - 2.0) * std::pow(r, s - 2.0);
                                     return std::array<double, 2>{psi * psi * grad_u,
                                                                  grad_v + laplace_psi * psi * center[0] * center[0]};
                                   });
  const double lhs = sums[0];
  const double rhs = sums[1];
  CknIdentityResult out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.relative_mismatch = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::numeric_limits<double>::min());
  return out;
}

VerificationReport verify_ckn_identity(double a, const ScalarTestFunction& u, const AnnulusGrid& grid,
                                       double tolerance) {
  const auto result = ckn_identity(a, u, grid);
  VerificationReport report("ckn-identity");
  report.add("ckn_identity", result.relative_mismatch, tolerance,
             {{"a", a}, {"n", grid.n}, {"h", grid.h}, {"tilt", u.tilt}},
             {{"lhs", result.lhs}, {"rhs", result.rhs}, {"relative_mismatch", result.relative_mismatch}});
  return report;
}

double sobolev_quotient(const SeparableTestFunction& u, int n, double b) {
  const auto exponents = sobolev_exponents(n, b);
  if (!exponents.hypothesis_positive_constant)
    throw std::domain_error("sobolev_quotient: c_b = 0 for this (n, b)");
  if (u.terms().size() != 1) throw std::invalid_argument("sobolev_quotient: expects a single-mode function");
  const ModeTerm& term = u.terms().front();
  const double p = exponents.two_star;

  double angular;
  if (n == 3) {
    const int d = std::max(term.psi.degree(), 0);
    const auto quad = SphereQuadrature::for_degree(3, static_cast<int>(std::ceil(p * d)) + 2);
    const NumericPolySpinor eval(term.psi);
    std::vector<std::complex<double>> value(term.psi.m());
    std::vector<double> terms;
    for (std::size_t q = 0; q < quad.size(); ++q) {
      eval.evaluate(quad.point(q).data(), value.data());
      double s = 0.0;
      for (const auto& v : value) s += std::norm(v);
      terms.push_back(quad.weight(q) * std::pow(term.psi_scale * term.psi_scale * s, p / 2.0));
    }
    angular = pairwise_sum(terms);
  } else {
    if (term.psi.degree() > 0) throw std::invalid_argument("sobolev_quotient: non-constant psi needs n = 3");
    std::vector<std::complex<double>> value(term.psi.m());
    const double origin[8] = {};
    NumericPolySpinor(term.psi).evaluate(origin, value.data());
    double s = 0.0;
    for (const auto& v : value) s += std::norm(v);
    const double area = 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
    angular = area * std::pow(term.psi_scale * term.psi_scale * s, p / 2.0);
  }

  const QuadratureRule rule =
      composite_gauss_legendre(term.profile.r_inner, term.profile.r_outer, kRadialPanels, 8);
  std::vector<double> radial;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rule.nodes[i];
    radial.push_back(rule.weights[i] * std::pow(r, n - 1.0 - exponents.beta) *
                     std::pow(std::abs(term.profile.value(r)), p));
  }
  const double denominator = std::pow(angular * pairwise_sum(radial), 2.0 / p);
  return qb_polar(u, n, b) / denominator;
}

OracleTable oracle_convergence(const CliffordRep& rep, const AngularSpectrum& spectrum, double b, int k,
                               double r_inner, double r_outer, const std::vector<double>& h_list) {
  if (h_list.empty()) throw std::invalid_argument("oracle_convergence: empty h list");
  OracleTable table;
  table.n = rep.n;
  table.b = b;
  table.k = k;
  const auto u = SeparableTestFunction::single_mode(spectrum, k, BumpProfile(r_inner, r_outer));
  const double polar = qb_polar(u, rep.n, b);
  for (double h : h_list) {
    OracleRow row;
    row.h = h;
    row.cartesian = qb_cartesian(rep, u, b, AnnulusGrid::make(rep.n, r_inner, r_outer, h));
    row.polar = polar;
    row.rel_diff = std::abs(row.cartesian - polar) / std::abs(polar);
    if (!table.rows.empty()) {
      const auto& last = table.rows.back();
      row.observed_order = std::log(std::abs(last.cartesian - polar) / std::abs(row.cartesian - polar)) /
                           std::log(last.h / h);
    }
    table.rows.push_back(row);
  }
  return table;
}

json to_json(const OracleTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows)
    rows.push_back({{"h", r.h},
                    {"cartesian", r.cartesian},
                    {"polar", r.polar},
                    {"rel_diff", r.rel_diff},
                    {"observed_order", r.observed_order ? json(finite_or_sentinel(*r.observed_order)) : json(nullptr)}});
  return {{"n", table.n}, {"b", table.b}, {"k", table.k}, {"rows", std::move(rows)}};
}

}  // namespace hardy
