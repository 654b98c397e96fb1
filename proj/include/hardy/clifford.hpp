#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hardy/exact.hpp"
#include "hardy/report.hpp"

namespace hardy {

/// Hermitian generators sigma_1..sigma_n with sigma_i sigma_j + sigma_j sigma_i = 2 delta_ij.
struct CliffordRep {
  int n = 0;
  int m = 0;
  std::vector<Matrix<GaussInt>> generators;
};

/// Spinor dimension produced by build_generators: 1 for n = 1, 2 for n = 3
/// (Pauli), otherwise 2^ceil(n/2).
int spinor_dimension(int n);

/// Deterministic construction. Even n uses the doubling
///   {sigma1 (x) I, sigma2 (x) I} u {sigma3 (x) g : g in gens(n - 2)},
/// odd n >= 5 keeps the first n generators of the n + 1 construction, and
/// n = 3 returns the Pauli matrices verbatim.
CliffordRep build_generators(int n);

/// Max entrywise deviation of the anticommutators from 2 delta_ij I and of
/// each generator from its adjoint. Exact, so a passing report has margin 0.
VerificationReport verify_clifford(const CliffordRep& rep);

/// x_hat . sigma for x != 0, in floating point.
Matrix<std::complex<double>> radial_projection(const CliffordRep& rep, std::span<const double> x);

/// Unnormalized x . sigma over Q(i); its square is |x|^2 I exactly.
Matrix<ComplexRational> position_matrix(const CliffordRep& rep, std::span<const Rational> x);

Matrix<GaussInt> kronecker(const Matrix<GaussInt>& a, const Matrix<GaussInt>& b);

json to_json(const CliffordRep& rep);
CliffordRep clifford_from_json(const json& j);

}  // namespace hardy
