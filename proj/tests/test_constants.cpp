#include <doctest.h>

#include <cmath>
#include <random>

#include "hardy/angular.hpp"
#include "hardy/constants.hpp"

using namespace hardy;

namespace {

// min over the admissible window [-60, 60], independent of the candidate logic
double brute_force_cb(int n, double b) {
  double best = 1e300;
  for (int k = -60; k <= 60; ++k) {
    if (!is_admissible(n, k)) continue;
    const double d = k - (n - 2 - b) / 2.0;
    best = std::min(best, d * d);
  }
  return best;
}

}  // namespace

TEST_CASE("constants::hardy_constant examples") {
  auto r = hardy_constant(3, 0.0);
  CHECK(r.c_b == 0.25);
  CHECK(r.argmin_modes == std::vector<int>{0});
  CHECK_FALSE(r.degenerate);
  CHECK(r.gamma == -0.5);

  r = hardy_constant(2, 0.0);
  CHECK(r.c_b == 0.0);
  CHECK(r.degenerate);
  REQUIRE(r.degenerate_mode.has_value());
  CHECK(*r.degenerate_mode == 0);

  r = hardy_constant(3, -1.0);
  CHECK(r.c_b == 1.0);
  CHECK(r.argmin_modes == std::vector<int>{0, 2});

  r = hardy_constant(4, 1.0);
  CHECK(r.c_b == 0.25);
  CHECK(r.argmin_modes == std::vector<int>{0});

  CHECK_THROWS_AS(hardy_constant(1, 0.0), std::invalid_argument);
}

TEST_CASE("constants::hardy_constant against enumeration") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-20.0, 20.0);
  for (int n = 2; n <= 7; ++n)
    for (int trial = 0; trial < 300; ++trial) {
      const double b = trial < 40 ? (trial - 20) / 2.0 : dist(rng);
      CAPTURE(n);
      CAPTURE(b);
      const auto r = hardy_constant(n, b);
      const double expected = brute_force_cb(n, b);
      CHECK(std::abs(r.c_b - expected) <= 1e-12 * std::max(1.0, expected));
      for (int k : r.argmin_modes) {
        CHECK(is_admissible(n, k));
        const double d = k - (n - 2 - b) / 2.0;
        CHECK(std::abs(d * d - r.c_b) <= 1e-12 * std::max(1.0, r.c_b));
      }
    }
}

TEST_CASE("constants::exact rational input") {
  const auto r = hardy_constant(3, Rational(-1));
  CHECK(r.argmin_modes == std::vector<int>{0, 2});
  const auto half = hardy_constant(2, Rational(1));
  CHECK(half.c_b == 0.25);
  CHECK(half.argmin_modes == std::vector<int>{-1, 0});
  CHECK(hardy_constant(5, Rational(3)).degenerate);
  CHECK_FALSE(hardy_constant(5, Rational(1)).degenerate);  // target 1 lies in the excluded set
}

TEST_CASE("constants::maximal constant is attained at b = 0") {
  for (int n = 3; n <= 8; ++n) {
    const double classical = std::pow((n - 2) / 2.0, 2);
    CHECK(hardy_constant(n, 0.0).c_b == classical);
  }
}

TEST_CASE("constants::mode_coefficient") {
  CHECK(mode_coefficient(3, 0.0, 0) == 0.25);
  CHECK(mode_coefficient(3, -1.0, 5) == 16.0);
  CHECK(mode_coefficient(4, 2.0, 0) == 0.0);  // k = -gamma
  CHECK_THROWS_AS(mode_coefficient(3, 0.0, 1), std::invalid_argument);
  // the minimum over admissible modes is c_b
  for (double b : {-2.5, -1.0, 0.0, 0.7, 3.0}) {
    double best = 1e300;
    for (int k = -20; k <= 20; ++k)
      if (is_admissible(4, k)) best = std::min(best, mode_coefficient(4, b, k));
    CHECK(best == doctest::Approx(hardy_constant(4, b).c_b).epsilon(1e-14));
  }
}

TEST_CASE("constants::ckn_constant") {
  CHECK(ckn_constant(3, 0.0) == 0.25);
  CHECK(ckn_constant(2, 0.0) == 0.0);
  CHECK(ckn_constant(1, 3 - 1 - 0.0) == 0.25);
  CHECK(ckn_constant(5, -1.0) == 1.0);
}

TEST_CASE("constants::constrained_constant") {
  auto c = constrained_constant(2, 0.0);
  CHECK(c.j == 0);
  CHECK(c.value == 1.0);
  CHECK(c.argmin_modes == std::vector<int>{-1, 1});

  c = constrained_constant(3, 1.0);
  CHECK(c.j == 0);
  CHECK(c.argmin_modes == std::vector<int>{-1});

  c = constrained_constant(3, -3.0);
  CHECK(c.j == 2);
  CHECK(c.value == 1.0);
  CHECK(c.argmin_modes == std::vector<int>{3});

  CHECK_THROWS_AS(constrained_constant(3, 0.0), std::invalid_argument);
}

TEST_CASE("constants::sobolev_exponents") {
  auto s = sobolev_exponents(3, 0.0);
  CHECK(s.two_star == 6.0);
  CHECK(s.beta == 0.0);
  s = sobolev_exponents(4, 2.0);
  CHECK(s.two_star == 4.0);
  CHECK(s.beta == 4.0);
  s = sobolev_exponents(3, 1.0);
  CHECK(s.two_star == 6.0);
  CHECK(s.beta == 3.0);
  CHECK_FALSE(s.hypothesis_positive_constant);  // (3, 1) is degenerate
  CHECK(sobolev_exponents(3, 0.0).hypothesis_positive_constant);
  CHECK_THROWS_AS(sobolev_exponents(2, 0.0), std::invalid_argument);
}

TEST_CASE("constants::eta composition") {
  const double R = 2.0;
  CHECK(*eta(1, R / std::exp(1.0), R) == doctest::Approx(1.0).epsilon(1e-15));
  for (double r : {0.3, 0.7, 1.1, 1.6}) {
    const double inner = std::log(R / r);
    if (inner > 0 && inner < R) CHECK(*eta(2, r, R) == doctest::Approx(std::log(R / inner)).epsilon(1e-15));
  }
  CHECK_FALSE(eta(2, R * std::exp(-R), R).has_value());
  CHECK_THROWS_AS(eta(0, 0.5, R), std::invalid_argument);
  CHECK_THROWS_AS(eta(1, R, R), std::invalid_argument);
}

TEST_CASE("constants::eta validity interval") {
  auto [lo, hi] = eta_valid_interval(1, 1.0);
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
  std::tie(lo, hi) = eta_valid_interval(2, 1.0);
  CHECK(lo == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(hi == doctest::Approx(1.0).epsilon(1e-15));
  double prev_lo = 0.0, prev_hi = 3.0;
  for (int K = 1; K <= 6; ++K) {
    std::tie(lo, hi) = eta_valid_interval(K, 3.0);
    CHECK(lo >= prev_lo);
    CHECK(hi <= prev_hi);
    CHECK(lo < hi);
    // every level is defined and positive strictly inside
    for (int i = 1; i <= 9; ++i) {
      const double r = lo + (hi - lo) * i / 10.0;
      for (int j = 1; j <= K; ++j) {
        const auto e = eta(j, r, 3.0);
        REQUIRE(e.has_value());
        CHECK(*e > 0.0);
      }
    }
    prev_lo = lo;
    prev_hi = hi;
  }
}

TEST_CASE("constants::remainder weights") {
  const double R = 1.0;
  const double r = R / std::exp(1.0);
  const auto lit1 = RemainderWeights::make(R, 1, RemainderVariant::literal);
  CHECK(remainder_weight(r, lit1, 0.0, 0.25) == doctest::Approx(0.25 / (r * r)).epsilon(1e-15));

  const auto lit2 = RemainderWeights::make(2.0, 2, RemainderVariant::literal);
  const auto inv2 = RemainderWeights::make(2.0, 2, RemainderVariant::inverse_square);
  const double x = 0.5;
  const double e1 = std::log(2.0 / x), e2 = std::log(2.0 / e1);
  const auto a = remainder_level_weights(x, lit2, 0.0, 0.25);
  const auto b = remainder_level_weights(x, inv2, 0.0, 0.25);
  REQUIRE(a.size() == 2);
  CHECK(a[1] == doctest::Approx(0.25 / (x * x) * e1 * e2).epsilon(1e-14));
  CHECK(b[1] == doctest::Approx(0.25 / (x * x) / (e1 * e1 * e2 * e2)).epsilon(1e-14));
  CHECK(a[1] != doctest::Approx(b[1]));

  const auto corrected = RemainderWeights::make(2.0, 1, RemainderVariant::inverse_square, RadialPower::corrected);
  CHECK(remainder_level_weights(x, corrected, -1.0, 1.0)[0] ==
        doctest::Approx(std::pow(x, -1.0) / (e1 * e1)).epsilon(1e-14));

  CHECK(remainder_weight(0.5, RemainderWeights::make(R, 0), 0.0, 0.25) == 0.0);
  CHECK_THROWS_AS(remainder_weight(0.1, RemainderWeights::make(R, 2), 0.0, 0.25), std::out_of_range);
  CHECK_THROWS_AS(RemainderWeights::make(R, -1), std::invalid_argument);
  CHECK(parse_remainder_variant("inverse-square") == RemainderVariant::inverse_square);
  CHECK(to_string(parse_radial_power("corrected")) == "corrected");
  CHECK_THROWS_AS(parse_remainder_variant("cubic"), std::invalid_argument);
}
