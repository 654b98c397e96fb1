#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "hardy/clifford.hpp"
#include "hardy/poly_spinor.hpp"
#include "hardy/report.hpp"

namespace hardy {

/// (sigma . grad) p, exact.
PolySpinor apply_dirac(const CliffordRep& rep, const PolySpinor& p);

/// L p = sum_{j<k} sigma_j sigma_k (x_j d_k - x_k d_j) p, exact and degree preserving.
PolySpinor apply_L(const CliffordRep& rep, const PolySpinor& p);

/// Laplace-Beltrami operator on a homogeneous p of degree d, realized as
/// |x|^2 Laplacian(p) - d (d + n - 2) p.
PolySpinor apply_sphere_laplacian(const PolySpinor& p);

/// Checks |x|^2 (sigma . grad) p == (x . sigma)(x . grad p + L p) exactly.
/// Throws std::invalid_argument for non-homogeneous p.
VerificationReport verify_polar_identity(const CliffordRep& rep, const PolySpinor& p);

/// Checks L^2 - (n - 2) L + Delta_S == 0 as an exact matrix identity on
/// homogeneous spinors of the given degree.
VerificationReport verify_beltrami_relation(const CliffordRep& rep, int degree);

/// Matrix of L on homogeneous degree-d spinors, basis ordered as in
/// coordinates(): (monomial index) * m + spinor index.
Matrix<ComplexRational> L_matrix(const CliffordRep& rep, int degree);
Matrix<ComplexRational> sphere_laplacian_matrix(int n, int m, int degree);

/// True iff k lies in Z \ {1, ..., n - 2}.
bool is_admissible(int n, int k);
std::vector<int> admissible_spectrum(int n, int k_lo, int k_hi);

struct SpectrumEntry {
  int degree = 0;
  int eigenvalue = 0;
  std::vector<PolySpinor> basis;
  int multiplicity() const { return static_cast<int>(basis.size()); }
};

struct DegreeSummary {
  int degree = 0;
  int dimension = 0;
  int found = 0;  // total eigenvector count; equals dimension when complete
};

struct AngularSpectrum {
  int n = 0;
  int m = 0;
  int degree_cap = 0;
  std::vector<SpectrumEntry> entries;
  std::vector<DegreeSummary> degrees;

  std::vector<int> eigenvalues() const;
  int multiplicity(int k) const;
  std::vector<PolySpinor> eigenbasis(int k) const;
  bool complete() const;
};

inline constexpr std::size_t kMaxSpectrumBasis = 2000;

/// Diagonalizes L on every homogeneous degree <= degree_cap by exact kernels of
/// L - k I over the window |k| <= d + n. Every eigenvector is re-verified as a
/// polynomial identity. Throws std::length_error above max_basis.
AngularSpectrum spectrum_bruteforce(const CliffordRep& rep, int degree_cap,
                                    std::size_t max_basis = kMaxSpectrumBasis);

json to_json(const AngularSpectrum& spectrum, bool include_basis = false);

/// Product quadrature on S^{n-1} for n in {2, 3}: equispaced angles on the
/// circle, Gauss-Legendre in cos(theta) times equispaced azimuth on S^2.
class SphereQuadrature {
 public:
  /// Exact for polynomials of degree <= exact_degree restricted to the sphere.
  static SphereQuadrature for_degree(int n, int exact_degree);

  int n() const { return n_; }
  std::size_t size() const { return weights_.size(); }
  const std::array<double, 3>& point(std::size_t q) const { return points_[q]; }
  double weight(std::size_t q) const { return weights_[q]; }

 private:
  int n_ = 0;
  std::vector<std::array<double, 3>> points_;
  std::vector<double> weights_;
};

/// Orthonormal (in the quadrature inner product) sampled basis of E_k.
/// Eigenvectors from different degrees may coincide on the sphere (|x|^2
/// multiples); dependent ones are dropped.
struct ModeBasis {
  int k = 0;
  /// samples[b][q * m + s]
  std::vector<std::vector<std::complex<double>>> samples;
  /// Worst ratio original norm / retained Gram-Schmidt residual.
  double condition = 1.0;
};

ModeBasis orthonormal_mode_basis(const AngularSpectrum& spectrum, const SphereQuadrature& quad, int k);

struct ModeProjection {
  ModeBasis basis;
  /// coefficients[radial sample][basis element]
  std::vector<std::vector<std::complex<double>>> coefficients;
};

/// Projects sampled fields u(r_i, omega_q) (layout samples[i][q * m + s]) onto E_k.
ModeProjection mode_project(const AngularSpectrum& spectrum, const SphereQuadrature& quad,
                            const std::vector<std::vector<std::complex<double>>>& samples, int k);

}  // namespace hardy
