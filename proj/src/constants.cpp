#include "hardy/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hardy {
namespace {

bool excluded(int n, long k) { return k >= 1 && k <= n - 2; }

long floor_of(double x) { return static_cast<long>(std::floor(x)); }
long ceil_of(double x) { return static_cast<long>(std::ceil(x)); }

long floor_of(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_si();
}

long ceil_of(const Rational& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_si();
}

double to_double(double x) { return x; }
double to_double(const Rational& x) { return x.get_d(); }

bool is_tie(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }
bool is_tie(const Rational& a, const Rational& b) { return a == b; }

bool is_zero(double x) { return x == 0.0; }
bool is_zero(const Rational& x) { return sgn(x) == 0; }

template <class Scalar>
HardyConstantReport hardy_constant_impl(int n, const Scalar& b) {
  if (n < 2) throw std::invalid_argument("hardy_constant: n must be >= 2");
  const Scalar target = (Scalar(n - 2) - b) / Scalar(2);

  long lo = floor_of(target);
  long hi = ceil_of(target);
  if (excluded(n, lo)) lo = 0;
  if (excluded(n, hi)) hi = n - 1;

  auto distance = [&](long k) {
    Scalar d = Scalar(k) - target;
    return Scalar(d * d);
  };
  const Scalar d_lo = distance(lo);
  const Scalar d_hi = distance(hi);

  HardyConstantReport report;
  report.n = n;
  report.b = to_double(b);
  report.gamma = 0.0 - to_double(target) + 0.0;
  if (lo == hi || is_tie(d_lo, d_hi)) {
    report.c_b = to_double(d_lo < d_hi ? d_lo : d_hi);
    report.argmin_modes = {static_cast<int>(lo)};
    if (hi != lo) report.argmin_modes.push_back(static_cast<int>(hi));
  } else if (d_lo < d_hi) {
    report.c_b = to_double(d_lo);
    report.argmin_modes = {static_cast<int>(lo)};
  } else {
    report.c_b = to_double(d_hi);
    report.argmin_modes = {static_cast<int>(hi)};
  }
  const Scalar best = d_lo < d_hi ? d_lo : d_hi;
  report.degenerate = is_zero(best);
  if (report.degenerate) {
    report.c_b = 0.0;
    report.degenerate_mode = report.argmin_modes.front();
  }
  return report;
}

}  // namespace

HardyConstantReport hardy_constant(int n, double b) { return hardy_constant_impl(n, b); }

HardyConstantReport hardy_constant(int n, const Rational& b) { return hardy_constant_impl(n, b); }

double mode_coefficient(int n, double b, int k) {
  if (excluded(n, k))
    throw std::invalid_argument("mode_coefficient: k = " + std::to_string(k) + " is not in S_L");
  const double shifted = k + (b + 2.0 - n) / 2.0;
  return shifted * shifted;
}

double ckn_constant(int n, double a) {
  const double half = (a + n - 2.0) / 2.0;
  return half * half;
}

ConstrainedConstant constrained_constant(int n, double b) {
  const auto hc = hardy_constant(n, b);
  if (!hc.degenerate) throw std::invalid_argument("constrained_constant: (n, b) is not degenerate");
  ConstrainedConstant out;
  out.j = *hc.degenerate_mode;
  long below = out.j - 1;
  while (excluded(n, below)) --below;
  long above = out.j + 1;
  while (excluded(n, above)) ++above;
  const double d_below = static_cast<double>((below - out.j) * (below - out.j));
  const double d_above = static_cast<double>((above - out.j) * (above - out.j));
  out.value = std::min(d_below, d_above);
  if (d_below == out.value) out.argmin_modes.push_back(static_cast<int>(below));
  if (d_above == out.value) out.argmin_modes.push_back(static_cast<int>(above));
  if (out.value != 1.0) throw std::logic_error("constrained_constant: minimum differs from 1");
  return out;
}

SobolevExponents sobolev_exponents(int n, double b) {
  if (n <= 2) throw std::invalid_argument("sobolev_exponents: requires n > 2");
  SobolevExponents out;
  out.two_star = 2.0 * n / (n - 2.0);
  out.beta = b * n / (n - 2.0);
  const double target = (n - 2.0 - b) / 2.0;
  const bool integral = target == std::floor(target);
  out.hypothesis_printed = !(integral && (target < 0.0 || target > n - 2.0));
  out.hypothesis_positive_constant = !hardy_constant(n, b).degenerate;
  return out;
}

std::optional<double> eta(int j, double r, double R) {
  if (j < 1) throw std::invalid_argument("eta: level must be >= 1");
  if (!(r > 0.0 && r < R)) throw std::invalid_argument("eta: requires 0 < r < R");
  double value = std::log(R / r);
  for (int level = 2; level <= j; ++level) {
    if (!(value > 0.0 && value < R)) return std::nullopt;
    value = std::log(R / value);
  }
  return value;
}

std::pair<double, double> eta_valid_interval(int K, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("eta_valid_interval: R must be positive");
  double lo = 0.0;
  double hi = R;
  // eta_i(r) in (0, R)  <=>  r between g^i(0) and g^i(R), g(s) = R exp(-s).
  double from_zero = 0.0;
  double from_r = R;
  for (int i = 1; i < K; ++i) {
    from_zero = R * std::exp(-from_zero);
    from_r = R * std::exp(-from_r);
    lo = std::max(lo, std::min(from_zero, from_r));
    hi = std::min(hi, std::max(from_zero, from_r));
  }
  return {lo, hi};
}

std::string to_string(RemainderVariant v) {
  return v == RemainderVariant::literal ? "literal" : "inverse-square";
}

std::string to_string(RadialPower p) { return p == RadialPower::printed ? "printed" : "corrected"; }

RemainderVariant parse_remainder_variant(const std::string& s) {
  if (s == "literal") return RemainderVariant::literal;
  if (s == "inverse-square" || s == "inverse_square") return RemainderVariant::inverse_square;
  throw std::invalid_argument("unknown remainder variant '" + s + "'");
}

RadialPower parse_radial_power(const std::string& s) {
  if (s == "printed") return RadialPower::printed;
  if (s == "corrected") return RadialPower::corrected;
  throw std::invalid_argument("unknown radial power '" + s + "'");
}

RemainderWeights RemainderWeights::make(double R, int K, RemainderVariant variant, RadialPower power) {
  if (K < 0) throw std::invalid_argument("RemainderWeights: K must be >= 0");
  RemainderWeights w;
  w.R = R;
  w.K = K;
  w.variant = variant;
  w.power = power;
  std::tie(w.valid_lo, w.valid_hi) = eta_valid_interval(K, R);
  return w;
}

std::vector<double> remainder_level_weights(double r, const RemainderWeights& weights, double b, double c_b) {
  if (!weights.contains(r))
    throw std::out_of_range("remainder weight: r outside the eta validity interval");
  const double radial = weights.power == RadialPower::printed ? std::pow(r, -2.0) : std::pow(r, -b - 2.0);
  std::vector<double> out;
  double product = 1.0;
  for (int k = 1; k <= weights.K; ++k) {
    const auto e = eta(k, r, weights.R);
    if (!e || !(*e > 0.0)) throw std::logic_error("remainder weight: eta undefined inside valid interval");
    product *= *e;
    const double factor = weights.variant == RemainderVariant::literal ? product : 1.0 / (product * product);
    out.push_back(c_b * radial * factor);
  }
  return out;
}

double remainder_weight(double r, const RemainderWeights& weights, double b, double c_b) {
  double total = 0.0;
  for (double w : remainder_level_weights(r, weights, b, c_b)) total += w;
  return total;
}

json to_json(const HardyConstantReport& report) {
  json j = {{"n", report.n},
            {"b", report.b},
            {"gamma", report.gamma},
            {"c_b", report.c_b},
            {"argmin_modes", report.argmin_modes},
            {"degenerate", report.degenerate}};
  j["degenerate_mode"] = report.degenerate_mode ? json(*report.degenerate_mode) : json(nullptr);
  return j;
}

}  // namespace hardy
