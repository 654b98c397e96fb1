#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hardy/constants.hpp"
#include "hardy/profile.hpp"
#include "hardy/report.hpp"

namespace hardy {

/// One angular mode of Q_b: the weighted form
///   int r^(n-1-b) (|c'|^2 + potential_coeff r^-2 |c|^2) dr  over  int r^(n-3-b) |c|^2 dr.
struct ModeProblem {
  int n = 0;
  double b = 0.0;
  int k = 0;
  double gamma = 0.0;            // (b + 2 - n) / 2
  double potential_coeff = 0.0;  // k^2 + (b + 2 - n) k

  /// Validates k in S_L and the completing-square identity
  /// ckn_constant(1, n - 1 - b) + potential_coeff == mode_coefficient(n, b, k).
  static ModeProblem make(int n, double b, int k);

  /// (k + gamma)^2, the infimum of the mode quotient.
  double floor() const { return (k + gamma) * (k + gamma); }
};

/// Interior nodes t_i = -T + (i + 1) h of [-T, T], t = log r, Dirichlet ends.
struct RadialGrid {
  double T = 0.0;
  int N = 0;

  static RadialGrid make(double T, int N);
  /// N = round(2T / spacing) - 1.
  static RadialGrid with_spacing(double T, double spacing);

  double h() const { return 2.0 * T / (N + 1); }
  double t(int i) const { return -T + (i + 1) * h(); }
};

/// Default resolution h = T / 1000.
int default_points(double T);
using PointRule = std::function<int(double T)>;

enum class MassWeight { hardy, log_squared };

/// Symmetric tridiagonal A and B; off arrays have length size() - 1.
struct TridiagonalPencil {
  std::vector<double> a_diag, a_off;
  std::vector<double> b_diag, b_off;

  std::size_t size() const { return a_diag.size(); }
};

/// After c(r) = r^gamma w(log r) the mode quotient is
/// (int |w'|^2 + (k + gamma)^2 |w|^2 dt) / int |w|^2 dt. A is the central
/// difference discretization of the numerator and B the lumped (trapezoid)
/// mass matrix, weighted by (1 + |t|)^-2 for MassWeight::log_squared.
TridiagonalPencil assemble_mode_pencil(const RadialGrid& grid, const ModeProblem& mode,
                                       MassWeight weight = MassWeight::hardy);

/// Number of generalized eigenvalues strictly below lambda (inertia of A - lambda B).
int count_below(const TridiagonalPencil& pencil, double lambda);

struct EigenResult {
  double lambda_min = 0.0;
  std::vector<double> eigenvector;  // B-normalized
  double residual = 0.0;            // |A v - lambda B v| / |B v|
  int iterations = 0;
  bool converged = false;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// Sturm-sequence bisection to the given bracket width, then inverse iteration
/// from a fixed start vector. Deterministic.
EigenResult min_eigenvalue(const TridiagonalPencil& pencil, double tolerance = 1e-12);

/// index-th generalized eigenvalue (0-based) by bisection only.
double nth_eigenvalue(const TridiagonalPencil& pencil, int index, double tolerance = 1e-12);

/// (k + gamma)^2 + (pi / 2T)^2, the continuum Dirichlet minimum.
double closed_form_eigenvalue(const ModeProblem& mode, double T);
/// Exact smallest eigenvalue of the discrete pencil with MassWeight::hardy.
double discrete_closed_form_eigenvalue(const ModeProblem& mode, const RadialGrid& grid);

struct SweepRow {
  double T = 0.0;
  int N = 0;
  double lambda_min = 0.0;
  double closed_form = 0.0;
  double abs_err = 0.0;
  double residual = 0.0;
  bool converged = false;
};

struct SweepResult {
  ModeProblem mode;
  std::vector<SweepRow> rows;
  bool strictly_decreasing = false;
  bool above_floor = false;
};

SweepResult sharpness_sweep(int n, double b, int k, const std::vector<double>& T_list,
                            const PointRule& points = default_points);

/// Linear constraint on the mode coefficient c_j:
/// int_{r_lo}^{r_hi} c(r) r^{r_power} dr = 0.
struct ConstraintSpec {
  enum class Kind { none, annulus_mean_zero };
  Kind kind = Kind::annulus_mean_zero;
  double r_lo = 1.0;
  double r_hi = 2.0;
  double r_power = 1.0;

  /// Discretized functional g with g . w = int over the annulus, using exact
  /// integration of the piecewise linear interpolant of w.
  std::vector<double> functional(const RadialGrid& grid, double gamma) const;
};

struct ConstrainedEigenResult {
  EigenResult eigen;
  double unconstrained_lambda = 0.0;
  double constraint_residual = 0.0;  // |g . w| / (|g| |w|)
  double alignment = 0.0;            // |g . v_1| / (|g| |v_1|)
  bool constraint_active = true;     // false when g annihilates the unconstrained minimizer
};

/// Minimizes the Rayleigh quotient of (A, B) over {g . w = 0}. The stationary
/// point satisfies A w - lambda B w = mu g, so the constrained minimum is the
/// root of g^T (A - lambda B)^-1 g in (lambda_1, lambda_2); the vector is then
/// projected onto the constraint in the B^-1 inner product.
ConstrainedEigenResult constrained_min_eigenvalue(const TridiagonalPencil& pencil,
                                                  std::span<const double> constraint,
                                                  double tolerance = 1e-12);

ConstrainedEigenResult constrained_mode_eigenvalue(const RadialGrid& grid, const ModeProblem& mode,
                                                   const ConstraintSpec& constraint,
                                                   MassWeight weight = MassWeight::log_squared);

struct ExcludedModeFloor {
  int j = 0;
  double floor = 0.0;
  std::vector<int> argmin_modes;
  std::vector<std::pair<int, double>> per_mode;  // (k, lambda_min)
};

/// min over k in S_L \ {j}, |k - j| <= 3 of the mode minimum at truncation T.
ExcludedModeFloor excluded_mode_floor(int n, double b, double T, const PointRule& points = default_points);

struct RemainderCheck {
  int mode = 0;
  double c_b = 0.0;
  double lhs = 0.0;      // one-mode Q_b
  double leading = 0.0;  // c_b int r^(-b-2) |u|^2
  std::vector<double> level_terms;
  double margin = 0.0;  // lhs - leading - sum(level_terms)
};

/// Evaluates both sides of the remainder inequality for u = f(r) psi_k with k
/// the first argmin mode of (n, b). Throws std::out_of_range when the support
/// of f leaves the eta validity interval for level K.
RemainderCheck remainder_check(const BumpProfile& profile, int n, double b, double R, int K,
                               RemainderVariant variant, RadialPower power = RadialPower::printed);

struct GroundStateProfile {
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> values;  // c(r) = r^gamma chi(log r)
  double quotient = 0.0;       // mode Rayleigh quotient of c
  double floor = 0.0;          // (k + gamma)^2
};

/// Cutoff of the generalized ground state r^gamma: chi = 1 on |t| <= T_inner,
/// 0 outside T_outer, C-infinity in between.
GroundStateProfile ground_state_profile(int n, double b, int k, double T_inner, double T_outer,
                                        int samples = 2001);

/// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x);
double smooth_step_derivative(double x);

/// Max |v(t) / v(0) - 1| over grid nodes with |t| <= window.
double flatness_deviation(const EigenResult& result, const RadialGrid& grid, double window);

json to_json(const SweepResult& sweep);

}  // namespace hardy
