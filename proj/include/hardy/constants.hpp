#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardy/exact.hpp"
#include "hardy/report.hpp"

namespace hardy {

struct HardyConstantReport {
  int n = 0;
  double b = 0.0;
  double gamma = 0.0;  // (b + 2 - n) / 2
  double c_b = 0.0;
  std::vector<int> argmin_modes;  // one or two admissible integers, ascending
  bool degenerate = false;        // c_b == 0
  std::optional<int> degenerate_mode;
};

/// c_b = min over k in Z \ {1..n-2} of (k - (n-2-b)/2)^2, from the admissible
/// integers adjacent to the target. Floating ties use a 1e-12 relative window.
HardyConstantReport hardy_constant(int n, double b);
/// Same, with exact tie and degeneracy detection.
HardyConstantReport hardy_constant(int n, const Rational& b);

/// (k + gamma)^2; throws for k outside S_L.
double mode_coefficient(int n, double b, int k);

/// ((a + n - 2) / 2)^2.
double ckn_constant(int n, double a);

struct ConstrainedConstant {
  int j = 0;
  double value = 0.0;
  std::vector<int> argmin_modes;
};

/// min over k in S_L \ {j} of (k - j)^2 for a degenerate (n, b). Throws
/// std::invalid_argument on non-degenerate input and std::logic_error if the
/// minimum is not 1.
ConstrainedConstant constrained_constant(int n, double b);

struct SobolevExponents {
  double two_star = 0.0;  // 2n / (n - 2)
  double beta = 0.0;      // b n / (n - 2)
  /// (n-2-b)/2 outside Z \ {0..n-2}, the stated hypothesis.
  bool hypothesis_printed = false;
  /// (n-2-b)/2 outside Z \ {1..n-2}, i.e. c_b > 0, which the argument uses.
  bool hypothesis_positive_constant = false;
};

SobolevExponents sobolev_exponents(int n, double b);

/// j-fold composition of eta_1(r) = log(R / r). Returns nullopt when an
/// intermediate value leaves (0, R). Throws unless 0 < r < R and j >= 1.
std::optional<double> eta(int j, double r, double R);

/// Open interval of r on which eta_1..eta_K are all defined and positive.
std::pair<double, double> eta_valid_interval(int K, double R);

enum class RemainderVariant { literal, inverse_square };
enum class RadialPower { printed, corrected };  // r^-2 versus r^(-b-2)

std::string to_string(RemainderVariant v);
std::string to_string(RadialPower p);
RemainderVariant parse_remainder_variant(const std::string& s);
RadialPower parse_radial_power(const std::string& s);

struct RemainderWeights {
  double R = 1.0;
  int K = 0;
  RemainderVariant variant = RemainderVariant::inverse_square;
  RadialPower power = RadialPower::printed;
  double valid_lo = 0.0;
  double valid_hi = 1.0;

  static RemainderWeights make(double R, int K, RemainderVariant variant = RemainderVariant::inverse_square,
                               RadialPower power = RadialPower::printed);
  bool contains(double r) const { return r > valid_lo && r < valid_hi; }
};

/// Per-level weights w_1(r)..w_K(r), each including the c_b prefactor:
/// literal       c_b r^p eta_1...eta_k,
/// inverse_square c_b r^p (eta_1...eta_k)^-2, with p = -2 or -b-2.
std::vector<double> remainder_level_weights(double r, const RemainderWeights& weights, double b, double c_b);

/// Sum of remainder_level_weights; throws outside the valid interval.
double remainder_weight(double r, const RemainderWeights& weights, double b, double c_b);

json to_json(const HardyConstantReport& report);

}  // namespace hardy
