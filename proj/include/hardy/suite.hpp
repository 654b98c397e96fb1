#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "hardy/poly_spinor.hpp"
#include "hardy/report.hpp"

namespace hardy {

inline constexpr int kCriterionCount = 13;

struct SuiteOptions {
  std::set<int> criteria;  // empty runs 1..kCriterionCount
  /// Replaces sigma_1 of the n = 3 representation by sigma_1 + I before checking.
  bool tamper_clifford = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  VerificationReport report;
};

/// Title of a numbered check; throws std::out_of_range for unknown ids.
std::string criterion_title(int id);

CriterionResult run_criterion(int id, const SuiteOptions& options = {});
std::vector<CriterionResult> run_criteria(const SuiteOptions& options = {});

/// Merges the per-criterion reports, prefixing case names with "Cnn/".
VerificationReport combine(const std::vector<CriterionResult>& results, const std::string& command = "full-suite");

/// Homogeneous degree-d spinor with Gaussian-integer coefficients in [-3, 3].
PolySpinor random_homogeneous_spinor(int n, int m, int degree, std::mt19937_64& rng);

}  // namespace hardy
