#pragma once

#include <cstddef>
#include <vector>

namespace hardy {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `points` nodes on [-1, 1] (Newton on P_n).
QuadratureRule gauss_legendre(int points);

/// Composite Gauss-Legendre rule on [a, b] with `panels` equal panels.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int points_per_panel = 8);

/// Pairwise (cascade) sum; the result is independent of any threading.
double pairwise_sum(const double* values, std::size_t count);
inline double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(values.data(), values.size());
}

}  // namespace hardy
