#include "hardy/clifford.hpp"

#include <cmath>
#include <stdexcept>

namespace hardy {
namespace {

Matrix<GaussInt> pauli(int which) {
  Matrix<GaussInt> s(2, 2);
  switch (which) {
    case 1:
      s(0, 1) = 1;
      s(1, 0) = 1;
      break;
    case 2:
      s(0, 1) = GaussInt(0, -1);
      s(1, 0) = GaussInt(0, 1);
      break;
    case 3:
      s(0, 0) = 1;
      s(1, 1) = -1;
      break;
    default:
      throw std::logic_error("pauli index");
  }
  return s;
}

std::vector<Matrix<GaussInt>> even_generators(int n) {
  std::vector<Matrix<GaussInt>> gens;
  Matrix<GaussInt> identity = Matrix<GaussInt>::identity(1);
  for (int level = 2; level <= n; level += 2) {
    std::vector<Matrix<GaussInt>> next;
    next.push_back(kronecker(pauli(1), identity));
    next.push_back(kronecker(pauli(2), identity));
    for (const auto& g : gens) next.push_back(kronecker(pauli(3), g));
    gens = std::move(next);
    identity = Matrix<GaussInt>::identity(identity.rows() * 2);
  }
  return gens;
}

}  // namespace

Matrix<GaussInt> kronecker(const Matrix<GaussInt>& a, const Matrix<GaussInt>& b) {
  Matrix<GaussInt> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

int spinor_dimension(int n) {
  if (n < 1) throw std::invalid_argument("spinor_dimension: n must be >= 1");
  if (n == 1) return 1;
  if (n == 3) return 2;
  return 1 << ((n + 1) / 2);
}

CliffordRep build_generators(int n) {
  if (n < 1) throw std::invalid_argument("build_generators: n must be >= 1");
  CliffordRep rep;
  rep.n = n;
  if (n == 1) {
    rep.generators.push_back(Matrix<GaussInt>::identity(1));
  } else if (n == 3) {
    rep.generators = {pauli(1), pauli(2), pauli(3)};
  } else {
    rep.generators = even_generators(n % 2 == 0 ? n : n + 1);
    rep.generators.resize(static_cast<std::size_t>(n));
  }
  rep.m = static_cast<int>(rep.generators.front().rows());
  return rep;
}

VerificationReport verify_clifford(const CliffordRep& rep) {
  VerificationReport report("verify_clifford");
  const json inputs = {{"n", rep.n}, {"m", rep.m}};
  bool well_formed = rep.n >= 1 && static_cast<int>(rep.generators.size()) == rep.n;
  for (const auto& g : rep.generators)
    well_formed = well_formed && static_cast<int>(g.rows()) == rep.m &&
                  static_cast<int>(g.cols()) == rep.m;
  report.add("shape", well_formed ? 0.0 : 1.0, 0.0, inputs);
  if (!well_formed) return report;

  const auto identity = Matrix<GaussInt>::identity(static_cast<std::size_t>(rep.m));
  double anticommutator = 0.0;
  double hermiticity = 0.0;
  for (int i = 0; i < rep.n; ++i) {
    const auto& si = rep.generators[i];
    hermiticity = std::max(hermiticity, max_abs_entry(si - adjoint(si)));
    for (int j = i; j < rep.n; ++j) {
      const auto& sj = rep.generators[j];
      auto deviation = si * sj + sj * si;
      if (i == j) deviation = deviation - scaled(identity, GaussInt(2));
      anticommutator = std::max(anticommutator, max_abs_entry(deviation));
    }
  }
  report.add("anticommutator", anticommutator, 0.0, inputs, {{"max_deviation", anticommutator}});
  report.add("hermiticity", hermiticity, 0.0, inputs, {{"max_deviation", hermiticity}});
  return report;
}

Matrix<std::complex<double>> radial_projection(const CliffordRep& rep, std::span<const double> x) {
  if (static_cast<int>(x.size()) != rep.n)
    throw std::invalid_argument("radial_projection: point dimension mismatch");
  double norm2 = 0.0;
  for (double xi : x) norm2 += xi * xi;
  if (norm2 == 0.0) throw std::invalid_argument("radial_projection: zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  Matrix<std::complex<double>> out(rep.m, rep.m);
  for (int i = 0; i < rep.n; ++i)
    for (int r = 0; r < rep.m; ++r)
      for (int c = 0; c < rep.m; ++c) out(r, c) += (x[i] * inv) * rep.generators[i](r, c).to_complex();
  return out;
}

Matrix<ComplexRational> position_matrix(const CliffordRep& rep, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != rep.n)
    throw std::invalid_argument("position_matrix: point dimension mismatch");
  Matrix<ComplexRational> out(rep.m, rep.m);
  for (int i = 0; i < rep.n; ++i)
    for (int r = 0; r < rep.m; ++r)
      for (int c = 0; c < rep.m; ++c)
        if (!rep.generators[i](r, c).is_zero())
          out(r, c) += ComplexRational(x[i]) * ComplexRational(rep.generators[i](r, c));
  return out;
}

json to_json(const CliffordRep& rep) {
  json gens = json::array();
  for (const auto& g : rep.generators) {
    json entries = json::array();
    for (const auto& e : g.data()) entries.push_back({e.re, e.im});
    gens.push_back(std::move(entries));
  }
  return {{"n", rep.n}, {"m", rep.m}, {"generators", std::move(gens)}};
}

CliffordRep clifford_from_json(const json& j) {
  CliffordRep rep;
  rep.n = j.at("n").get<int>();
  rep.m = j.at("m").get<int>();
  for (const auto& g : j.at("generators")) {
    if (g.size() != static_cast<std::size_t>(rep.m * rep.m))
      throw std::invalid_argument("clifford_from_json: generator has wrong entry count");
    Matrix<GaussInt> mat(rep.m, rep.m);
    std::size_t idx = 0;
    for (const auto& e : g) {
      mat(idx / rep.m, idx % rep.m) = GaussInt(e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>());
      ++idx;
    }
    rep.generators.push_back(std::move(mat));
  }
  return rep;
}

}  // namespace hardy
