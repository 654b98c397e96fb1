#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "hardy/angular.hpp"
#include "hardy/clifford.hpp"
#include "hardy/poly_spinor.hpp"
#include "hardy/profile.hpp"
#include "hardy/report.hpp"

namespace hardy {

/// Cubic lattice h Z^n restricted to r_inner < |x| < r_outer, n in {2, 3}.
struct AnnulusGrid {
  int n = 3;
  double r_inner = 0.5;
  double r_outer = 1.5;
  double h = 0.005;

  /// Requires 0 < r_inner < r_outer and h < (r_outer - r_inner) / 10.
  static AnnulusGrid make(int n, double r_inner, double r_outer, double h);
  double span() const { return r_outer - r_inner; }
};

/// f(r) psi(x / |x|) with psi an exact homogeneous L-eigenspinor.
struct ModeTerm {
  BumpProfile profile;
  int k = 0;
  PolySpinor psi;        // homogeneous, L psi = k psi
  double psi_scale = 1;  // multiplies psi so that int_S |psi|^2 = 1
};

class SeparableTestFunction {
 public:
  SeparableTestFunction(int n, int m) : n_(n), m_(m) {}

  /// Picks the lowest-degree basis vector of E_k from the spectrum and
  /// normalizes it on the unit sphere.
  static SeparableTestFunction single_mode(const AngularSpectrum& spectrum, int k, const BumpProfile& profile);

  void add_term(ModeTerm term);
  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<ModeTerm>& terms() const { return terms_; }
  double support_inner() const;
  double support_outer() const;

 private:
  int n_;
  int m_;
  std::vector<ModeTerm> terms_;
};

/// int_S |psi|^2 for a homogeneous spinor, by exact-degree sphere quadrature.
double sphere_norm_squared(const PolySpinor& psi);

/// r^-b |(sigma . grad) u|^2 summed over lattice points inside the annulus,
/// with central differences and pairwise summation. Throws std::out_of_range
/// if u is not supported inside the grid annulus.
double qb_cartesian(const CliffordRep& rep, const SeparableTestFunction& u, double b, const AnnulusGrid& grid);

/// Sum over terms of int r^(n-1-b) (f'^2 + (k^2 + (b+2-n)k) r^-2 f^2) dr.
/// Assumes distinct terms lie in distinct eigenspaces.
double qb_polar(const SeparableTestFunction& u, int n, double b);

/// Scalar test function f(r) (1 + tilt x_1 / r).
struct ScalarTestFunction {
  BumpProfile profile;
  double tilt = 0.0;

  double value(const double* x, int n) const;
};

struct CknIdentityResult {
  double lhs = 0.0;  // int psi^2 |grad u|^2
  double rhs = 0.0;  // int |grad(u psi)|^2 + (Laplace psi) psi u^2
  double relative_mismatch = 0.0;
};

/// Both sides of int psi^2 |grad u|^2 = int |grad(u psi)|^2 + (Laplace psi) psi |u|^2
/// with psi = |x|^(a/2), gradients by central differences on the lattice.
CknIdentityResult ckn_identity(double a, const ScalarTestFunction& u, const AnnulusGrid& grid);
VerificationReport verify_ckn_identity(double a, const ScalarTestFunction& u, const AnnulusGrid& grid,
                                       double tolerance = 1e-3);

/// Q_b(u) / (int |x|^-beta |u|^2*)^(2/2*) by radial and sphere quadrature.
/// Throws std::domain_error when c_b = 0 for (n, b). The angular integral of
/// |psi|^2* uses sphere quadrature for n = 3 and requires constant psi otherwise.
double sobolev_quotient(const SeparableTestFunction& u, int n, double b);

struct OracleRow {
  double h = 0.0;
  double cartesian = 0.0;
  double polar = 0.0;
  double rel_diff = 0.0;
  std::optional<double> observed_order;  // from the previous row
};

struct OracleTable {
  int n = 3;
  double b = 0.0;
  int k = 0;
  std::vector<OracleRow> rows;
};

/// Convergence study of qb_cartesian against qb_polar for u = f psi_k with the
/// default bump on the grid annulus; h_list entries are absolute spacings.
OracleTable oracle_convergence(const CliffordRep& rep, const AngularSpectrum& spectrum, double b, int k,
                               double r_inner, double r_outer, const std::vector<double>& h_list);

json to_json(const OracleTable& table);

}  // namespace hardy
