#include "hardy/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hardy/angular.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Solves a general tridiagonal system with partial pivoting (LAPACK gtsv scheme).
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> sup, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> sup2(n > 2 ? n - 2 : 0, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(diag[i]) >= std::abs(sub[i])) {
      if (diag[i] == 0.0) throw std::runtime_error("solve_tridiagonal: singular matrix");
      const double factor = sub[i] / diag[i];
      diag[i + 1] -= factor * sup[i];
      rhs[i + 1] -= factor * rhs[i];
      if (i + 2 < n) sub[i] = 0.0;
    } else {
      const double factor = diag[i] / sub[i];
      diag[i] = sub[i];
      const double tmp = diag[i + 1];
      diag[i + 1] = sup[i] - factor * tmp;
      if (i + 2 < n) {
        sup2[i] = sup[i + 1];
        sup[i + 1] = -factor * sup2[i];
      }
      sup[i] = tmp;
      std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= factor * rhs[i];
    }
  }
  if (diag[n - 1] == 0.0) throw std::runtime_error("solve_tridiagonal: singular matrix");
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  if (n > 1) x[n - 2] = (rhs[n - 2] - sup[n - 2] * x[n - 1]) / diag[n - 2];
  for (std::size_t i = n - 2; i-- > 0;)
    x[i] = (rhs[i] - sup[i] * x[i + 1] - sup2[i] * x[i + 2]) / diag[i];
  return x;
}

/// (A - shift B) x = rhs.
std::vector<double> solve_shifted(const TridiagonalPencil& p, double shift, const std::vector<double>& rhs) {
  const std::size_t n = p.size();
  std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) diag[i] = p.a_diag[i] - shift * p.b_diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) off[i] = p.a_off[i] - shift * p.b_off[i];
  return solve_tridiagonal(off, diag, off, rhs);
}

std::vector<double> multiply(const std::vector<double>& diag, const std::vector<double>& off,
                             const std::vector<double>& x) {
  const std::size_t n = diag.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += off[i - 1] * x[i - 1];
    if (i + 1 < n) v += off[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> terms(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) terms[i] = a[i] * b[i];
  return pairwise_sum(terms);
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void check_pencil(const TridiagonalPencil& p) {
  const std::size_t n = p.size();
  if (n == 0 || p.b_diag.size() != n || p.a_off.size() != n - 1 || p.b_off.size() != n - 1)
    throw std::invalid_argument("TridiagonalPencil: inconsistent sizes");
}

/// Bracket [lo, hi] around the index-th eigenvalue with count(lo) <= index < count(hi).
std::pair<double, double> bisect(const TridiagonalPencil& p, int index, double tolerance, int& iterations) {
  // Gershgorin bound of the pencil is not available for general B, so expand.
  double hi = 1.0;
  while (count_below(p, hi) <= index) hi = hi > 0 ? 2.0 * hi + 1.0 : 1.0;
  double lo = std::min(0.0, hi) - 1.0;
  while (count_below(p, lo) > index) lo = hi - 2.0 * (hi - lo);
  iterations = 0;
  while (hi - lo > std::max(tolerance, 4.0 * kEps * std::max(std::abs(lo), std::abs(hi))) && iterations < 400) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(p, mid) > index)
      hi = mid;
    else
      lo = mid;
    ++iterations;
  }
  return {lo, hi};
}

}  // namespace

ModeProblem ModeProblem::make(int n, double b, int k) {
  if (n < 2) throw std::invalid_argument("ModeProblem: n must be >= 2");
  ModeProblem mode;
  mode.n = n;
  mode.b = b;
  mode.k = k;
  mode.gamma = (b + 2.0 - n) / 2.0;
  mode.potential_coeff = static_cast<double>(k) * k + (b + 2.0 - n) * k;
  const double coefficient = mode_coefficient(n, b, k);  // throws for k outside S_L
  const double completed = ckn_constant(1, n - 1.0 - b) + mode.potential_coeff;
  const double scale = 1.0 + std::abs(coefficient) + std::abs(mode.potential_coeff);
  if (std::abs(completed - coefficient) > 1e-12 * scale)
    throw std::logic_error("ModeProblem: completing-the-square identity failed");
  return mode;
}

RadialGrid RadialGrid::make(double T, int N) {
  if (!(T > 0.0)) throw std::invalid_argument("RadialGrid: T must be positive");
  if (N < 3) throw std::invalid_argument("RadialGrid: need at least 3 interior points");
  return RadialGrid{T, N};
}

RadialGrid RadialGrid::with_spacing(double T, double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("RadialGrid: spacing must be positive");
  return make(T, static_cast<int>(std::lround(2.0 * T / spacing)) - 1);
}

int default_points(double T) { return RadialGrid::with_spacing(T, T / 1000.0).N; }

TridiagonalPencil assemble_mode_pencil(const RadialGrid& grid, const ModeProblem& mode, MassWeight weight) {
  const int N = grid.N;
  const double h = grid.h();
  const double floor = mode.floor();
  TridiagonalPencil p;
  p.a_diag.assign(N, h * (2.0 / (h * h) + floor));
  p.a_off.assign(N - 1, -1.0 / h);
  p.b_diag.resize(N);
  p.b_off.assign(N - 1, 0.0);
  for (int i = 0; i < N; ++i) {
    const double w = weight == MassWeight::hardy ? 1.0 : 1.0 / std::pow(1.0 + std::abs(grid.t(i)), 2);
    p.b_diag[i] = h * w;
  }
  return p;
}

int count_below(const TridiagonalPencil& p, double lambda) {
  check_pencil(p);
  double offmax = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    offmax = std::max(offmax, std::abs(p.a_off[i] - lambda * p.b_off[i]));
  const double pivmin = std::max(std::numeric_limits<double>::min(), kEps * kEps * offmax * offmax);
  int count = 0;
  double d = p.a_diag[0] - lambda * p.b_diag[0];
  for (std::size_t i = 0;; ++i) {
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    if (i + 1 == p.size()) break;
    const double e = p.a_off[i] - lambda * p.b_off[i];
    d = (p.a_diag[i + 1] - lambda * p.b_diag[i + 1]) - e * e / d;
  }
  return count;
}

double nth_eigenvalue(const TridiagonalPencil& pencil, int index, double tolerance) {
  check_pencil(pencil);
  if (index < 0 || static_cast<std::size_t>(index) >= pencil.size())
    throw std::out_of_range("nth_eigenvalue: index out of range");
  int iterations = 0;
  auto [lo, hi] = bisect(pencil, index, tolerance, iterations);
  return 0.5 * (lo + hi);
}

EigenResult min_eigenvalue(const TridiagonalPencil& pencil, double tolerance) {
  check_pencil(pencil);
  EigenResult result;
  int iterations = 0;
  auto [lo, hi] = bisect(pencil, 0, tolerance, iterations);
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  const bool bracketed = hi - lo <= std::max(tolerance, 4.0 * kEps * std::max(std::abs(lo), std::abs(hi)));

  const std::size_t n = pencil.size();
  const double shift = lo - 1e-10 * std::max(1.0, std::abs(lo));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 1e-3 * static_cast<double>(i) / static_cast<double>(n);
  double lambda = 0.5 * (lo + hi);
  double relative_backward = 1.0;
  int inverse_steps = 0;
  double a_scale = 0.0, b_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a_scale = std::max(a_scale, std::abs(pencil.a_diag[i]) + 2.0 * (i + 1 < n ? std::abs(pencil.a_off[i]) : 0.0));
    b_scale = std::max(b_scale, std::abs(pencil.b_diag[i]) + 2.0 * (i + 1 < n ? std::abs(pencil.b_off[i]) : 0.0));
  }
  for (; inverse_steps < 8; ++inverse_steps) {
    x = solve_shifted(pencil, shift, multiply(pencil.b_diag, pencil.b_off, x));
    const auto bx = multiply(pencil.b_diag, pencil.b_off, x);
    const double bnorm = std::sqrt(dot(x, bx));
    for (auto& v : x) v /= bnorm;
    const auto ax = multiply(pencil.a_diag, pencil.a_off, x);
    const auto bx1 = multiply(pencil.b_diag, pencil.b_off, x);
    const double rq = dot(x, ax);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = ax[i] - rq * bx1[i];
    result.residual = norm(r) / norm(bx1);
    relative_backward = norm(r) / ((a_scale + std::abs(rq) * b_scale) * norm(x));
    lambda = rq;
    if (relative_backward < 1e-13) break;
  }
  // The Rayleigh quotient is second-order accurate; keep it when it is consistent with the bracket.
  const double slack = 1e-9 * std::max(1.0, std::abs(lo));
  if (lambda < lo - slack || lambda > hi + slack) lambda = 0.5 * (lo + hi);
  if (x[n / 2] < 0.0)
    for (auto& v : x) v = -v;
  result.lambda_min = lambda;
  result.eigenvector = std::move(x);
  result.iterations = iterations + inverse_steps + 1;
  result.converged = bracketed && relative_backward < 1e-10;
  return result;
}

double closed_form_eigenvalue(const ModeProblem& mode, double T) {
  const double kinetic = std::numbers::pi / (2.0 * T);
  return mode.floor() + kinetic * kinetic;
}

double discrete_closed_form_eigenvalue(const ModeProblem& mode, const RadialGrid& grid) {
  const double h = grid.h();
  const double s = 2.0 / h * std::sin(std::numbers::pi / (2.0 * (grid.N + 1)));
  return mode.floor() + s * s;
}

SweepResult sharpness_sweep(int n, double b, int k, const std::vector<double>& T_list, const PointRule& points) {
  if (T_list.empty()) throw std::invalid_argument("sharpness_sweep: empty T list");
  SweepResult sweep;
  sweep.mode = ModeProblem::make(n, b, k);
  for (double T : T_list) {
    const auto grid = RadialGrid::make(T, points(T));
    const auto eig = min_eigenvalue(assemble_mode_pencil(grid, sweep.mode));
    SweepRow row;
    row.T = T;
    row.N = grid.N;
    row.lambda_min = eig.lambda_min;
    row.closed_form = closed_form_eigenvalue(sweep.mode, T);
    row.abs_err = std::abs(eig.lambda_min - row.closed_form);
    row.residual = eig.residual;
    row.converged = eig.converged;
    sweep.rows.push_back(row);
  }
  sweep.strictly_decreasing = true;
  sweep.above_floor = true;
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    if (!(sweep.rows[i].lambda_min > sweep.mode.floor())) sweep.above_floor = false;
    if (i > 0 && sweep.rows[i].T > sweep.rows[i - 1].T &&
        !(sweep.rows[i].lambda_min < sweep.rows[i - 1].lambda_min))
      sweep.strictly_decreasing = false;
  }
  return sweep;
}

std::vector<double> ConstraintSpec::functional(const RadialGrid& grid, double gamma) const {
  std::vector<double> g(grid.N, 0.0);
  if (kind == Kind::none) return g;
  if (!(r_lo > 0.0 && r_hi > r_lo)) throw std::invalid_argument("ConstraintSpec: bad annulus");
  // int c r^p dr with c = e^{gamma t} w and dr = e^t dt.
  const double ta = std::log(r_lo);
  const double tb = std::log(r_hi);
  const double rate = gamma + r_power + 1.0;
  const QuadratureRule rule = gauss_legendre(6);
  const double h = grid.h();
  for (int e = -1; e < grid.N; ++e) {
    const double left = grid.t(e);  // e = -1 is the Dirichlet node -T
    const double right = left + h;
    const double lo = std::max(left, ta);
    const double hi = std::min(right, tb);
    if (!(hi > lo)) continue;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = lo + 0.5 * (hi - lo) * (rule.nodes[q] + 1.0);
      const double w = 0.5 * (hi - lo) * rule.weights[q] * std::exp(rate * t);
      const double phi_right = (t - left) / h;
      if (e >= 0) g[e] += w * (1.0 - phi_right);
      if (e + 1 < grid.N) g[e + 1] += w * phi_right;
    }
  }
  return g;
}

ConstrainedEigenResult constrained_min_eigenvalue(const TridiagonalPencil& pencil,
                                                  std::span<const double> constraint, double tolerance) {
  check_pencil(pencil);
  const std::size_t n = pencil.size();
  if (constraint.size() != n) throw std::invalid_argument("constrained_min_eigenvalue: functional length");
  std::vector<double> g(constraint.begin(), constraint.end());
  const double gnorm = norm(g);
  if (gnorm == 0.0) throw std::invalid_argument("constrained_min_eigenvalue: zero constraint functional");

  ConstrainedEigenResult out;
  const EigenResult first = min_eigenvalue(pencil, tolerance);
  out.unconstrained_lambda = first.lambda_min;
  out.alignment = std::abs(dot(g, first.eigenvector)) / (gnorm * norm(first.eigenvector));
  if (out.alignment < 1e-10) {
    out.constraint_active = false;
    out.eigen = first;
    out.constraint_residual = out.alignment;
    return out;
  }

  auto secular = [&](double lambda) { return dot(g, solve_shifted(pencil, lambda, g)); };
  const double lambda2 = nth_eigenvalue(pencil, 1, tolerance);
  double lo = first.bracket_hi;
  double hi = lambda2;
  int iterations = 0;
  while (hi - lo > std::max(tolerance, 4.0 * kEps * std::abs(hi)) && iterations < 400) {
    const double mid = 0.5 * (lo + hi);
    if (secular(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
    ++iterations;
  }
  const double root = 0.5 * (lo + hi);

  std::vector<double> w = solve_shifted(pencil, root, g);
  std::vector<double> binv_g = solve_shifted(TridiagonalPencil{pencil.b_diag, pencil.b_off, pencil.b_diag,
                                                               pencil.b_off},
                                             0.0, g);
  const double correction = dot(g, w) / dot(g, binv_g);
  for (std::size_t i = 0; i < n; ++i) w[i] -= correction * binv_g[i];
  const auto bw = multiply(pencil.b_diag, pencil.b_off, w);
  const double bnorm = std::sqrt(dot(w, bw));
  for (auto& v : w) v /= bnorm;
  if (w[n / 2] < 0.0)
    for (auto& v : w) v = -v;

  const auto aw = multiply(pencil.a_diag, pencil.a_off, w);
  const auto bw1 = multiply(pencil.b_diag, pencil.b_off, w);
  const double rq = dot(w, aw);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = aw[i] - rq * bw1[i];
  const double mu = dot(binv_g, r) / dot(g, binv_g);
  for (std::size_t i = 0; i < n; ++i) r[i] -= mu * g[i];

  out.eigen.lambda_min = rq;
  out.eigen.eigenvector = std::move(w);
  out.eigen.residual = norm(r) / norm(bw1);
  out.eigen.iterations = iterations;
  out.eigen.bracket_lo = lo;
  out.eigen.bracket_hi = hi;
  out.eigen.converged = hi - lo <= std::max(tolerance, 4.0 * kEps * std::abs(hi));
  out.constraint_residual = std::abs(dot(g, out.eigen.eigenvector)) / (gnorm * norm(out.eigen.eigenvector));
  return out;
}

ConstrainedEigenResult constrained_mode_eigenvalue(const RadialGrid& grid, const ModeProblem& mode,
                                                   const ConstraintSpec& constraint, MassWeight weight) {
  const auto pencil = assemble_mode_pencil(grid, mode, weight);
  if (constraint.kind == ConstraintSpec::Kind::none) {
    ConstrainedEigenResult out;
    out.eigen = min_eigenvalue(pencil);
    out.unconstrained_lambda = out.eigen.lambda_min;
    out.constraint_active = false;
    return out;
  }
  return constrained_min_eigenvalue(pencil, constraint.functional(grid, mode.gamma));
}

ExcludedModeFloor excluded_mode_floor(int n, double b, double T, const PointRule& points) {
  const auto hc = hardy_constant(n, b);
  if (!hc.degenerate) throw std::invalid_argument("excluded_mode_floor: (n, b) is not degenerate");
  ExcludedModeFloor out;
  out.j = *hc.degenerate_mode;
  out.floor = std::numeric_limits<double>::infinity();
  const auto grid = RadialGrid::make(T, points(T));
  for (int k = out.j - 3; k <= out.j + 3; ++k) {
    if (k == out.j || !is_admissible(n, k)) continue;
    const double lambda = min_eigenvalue(assemble_mode_pencil(grid, ModeProblem::make(n, b, k))).lambda_min;
    out.per_mode.emplace_back(k, lambda);
    out.floor = std::min(out.floor, lambda);
  }
  for (const auto& [k, lambda] : out.per_mode)
    if (lambda - out.floor <= 1e-9 * std::max(1.0, out.floor)) out.argmin_modes.push_back(k);
  return out;
}

RemainderCheck remainder_check(const BumpProfile& profile, int n, double b, double R, int K,
                               RemainderVariant variant, RadialPower power) {
  const auto weights = RemainderWeights::make(R, K, variant, power);
  if (!(profile.r_inner > weights.valid_lo && profile.r_outer < weights.valid_hi))
    throw std::out_of_range("remainder_check: profile support leaves the eta validity interval");
  const auto hc = hardy_constant(n, b);
  const auto mode = ModeProblem::make(n, b, hc.argmin_modes.front());
  RemainderCheck out;
  out.mode = mode.k;
  out.c_b = hc.c_b;
  out.level_terms.assign(K, 0.0);

  const QuadratureRule rule = composite_gauss_legendre(profile.r_inner, profile.r_outer, 200, 8);
  std::vector<double> lhs_terms, leading_terms;
  std::vector<std::vector<double>> level_terms(K);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double r = rule.nodes[q];
    const double w = rule.weights[q];
    const double f = profile.value(r);
    const double df = profile.derivative(r);
    lhs_terms.push_back(w * std::pow(r, n - 1.0 - b) * (df * df + mode.potential_coeff * f * f / (r * r)));
    leading_terms.push_back(w * hc.c_b * std::pow(r, n - 3.0 - b) * f * f);
    if (K > 0) {
      const auto levels = remainder_level_weights(r, weights, b, hc.c_b);
      for (int k = 0; k < K; ++k) level_terms[k].push_back(w * levels[k] * f * f * std::pow(r, n - 1.0));
    }
  }
  out.lhs = pairwise_sum(lhs_terms);
  out.leading = pairwise_sum(leading_terms);
  out.margin = out.lhs - out.leading;
  for (int k = 0; k < K; ++k) {
    out.level_terms[k] = pairwise_sum(level_terms[k]);
    out.margin -= out.level_terms[k];
  }
  return out;
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double c = std::exp(-1.0 / (1.0 - x));
  return a / (a + c);
}

double smooth_step_derivative(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / x);
  const double c = std::exp(-1.0 / (1.0 - x));
  const double da = a / (x * x);
  const double dc = -c / ((1.0 - x) * (1.0 - x));
  return (da * (a + c) - a * (da + dc)) / ((a + c) * (a + c));
}

GroundStateProfile ground_state_profile(int n, double b, int k, double T_inner, double T_outer, int samples) {
  if (!(T_inner >= 0.0 && T_outer > T_inner))
    throw std::invalid_argument("ground_state_profile: need 0 <= T_inner < T_outer");
  const auto mode = ModeProblem::make(n, b, k);
  const double width = T_outer - T_inner;
  auto chi = [&](double t) { return smooth_step((T_outer - std::abs(t)) / width); };
  auto dchi = [&](double t) {
    const double sign = t > 0 ? -1.0 : (t < 0 ? 1.0 : 0.0);
    return sign * smooth_step_derivative((T_outer - std::abs(t)) / width) / width;
  };

  GroundStateProfile out;
  out.floor = mode.floor();
  for (int i = 0; i < samples; ++i) {
    const double t = -T_outer + 2.0 * T_outer * i / (samples - 1);
    const double r = std::exp(t);
    out.t.push_back(t);
    out.r.push_back(r);
    out.values.push_back(std::pow(r, mode.gamma) * chi(t));
  }

  // Quadrature of the r-form of the quotient; nodes are placed in t = log r, dr = r dt.
  std::vector<double> num, den;
  for (double sign : {-1.0, 1.0}) {
    const double a = sign < 0 ? -T_outer : 0.0;
    const double c = sign < 0 ? 0.0 : T_outer;
    const QuadratureRule rule = composite_gauss_legendre(a, c, 400, 8);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = rule.nodes[q];
      const double r = std::exp(t);
      const double value = std::pow(r, mode.gamma) * chi(t);
      const double deriv = std::pow(r, mode.gamma - 1.0) * (mode.gamma * chi(t) + dchi(t));
      const double dr = rule.weights[q] * r;
      num.push_back(dr * std::pow(r, n - 1.0 - b) *
                    (deriv * deriv + mode.potential_coeff * value * value / (r * r)));
      den.push_back(dr * std::pow(r, n - 3.0 - b) * value * value);
    }
  }
  out.quotient = pairwise_sum(num) / pairwise_sum(den);
  return out;
}

double flatness_deviation(const EigenResult& result, const RadialGrid& grid, double window) {
  const int center = grid.N / 2;
  const double reference = result.eigenvector.at(center);
  double worst = 0.0;
  for (int i = 0; i < grid.N; ++i)
    if (std::abs(grid.t(i)) <= window)
      worst = std::max(worst, std::abs(result.eigenvector[i] / reference - 1.0));
  return worst;
}

json to_json(const SweepResult& sweep) {
  json rows = json::array();
  for (const auto& r : sweep.rows)
    rows.push_back({{"T", r.T},
                    {"N", r.N},
                    {"lambda_min", r.lambda_min},
                    {"closed_form", r.closed_form},
                    {"abs_err", r.abs_err},
                    {"residual", r.residual},
                    {"converged", r.converged}});
  return {{"n", sweep.mode.n},
          {"b", sweep.mode.b},
          {"k", sweep.mode.k},
          {"gamma", sweep.mode.gamma},
          {"mode_coefficient", sweep.mode.floor()},
          {"rows", std::move(rows)},
          {"strictly_decreasing", sweep.strictly_decreasing},
          {"above_floor", sweep.above_floor}};
}

}  // namespace hardy
