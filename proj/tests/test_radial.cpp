#include <doctest.h>

#include <cmath>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "hardy/radial.hpp"

using namespace hardy;

namespace {

using Case = std::tuple<int, double, int>;

struct Dense {
  Eigen::MatrixXd A, B;
};

Dense dense(const TridiagonalPencil& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Dense d{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    d.A(i, i) = p.a_diag[i];
    d.B(i, i) = p.b_diag[i];
    if (i + 1 < n) {
      d.A(i, i + 1) = d.A(i + 1, i) = p.a_off[i];
      d.B(i, i + 1) = d.B(i + 1, i) = p.b_off[i];
    }
  }
  return d;
}

Eigen::VectorXd dense_eigenvalues(const TridiagonalPencil& p) {
  const auto d = dense(p);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(d.A, d.B);
  REQUIRE(solver.info() == Eigen::Success);
  return solver.eigenvalues();
}

// min of the quotient over {g . w = 0} by restriction to an orthonormal basis of g's complement
double dense_constrained_min(const TridiagonalPencil& p, const std::vector<double>& g) {
  const auto d = dense(p);
  const auto n = d.A.rows();
  Eigen::VectorXd gv = Eigen::Map<const Eigen::VectorXd>(g.data(), n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gv);
  const Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd Z = Q.rightCols(n - 1);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(Z.transpose() * d.A * Z, Z.transpose() * d.B * Z);
  REQUIRE(solver.info() == Eigen::Success);
  return solver.eigenvalues()(0);
}

}  // namespace

TEST_CASE("radial::mode problem") {
  const auto m = ModeProblem::make(3, 0.0, 0);
  CHECK(m.gamma == -0.5);
  CHECK(m.potential_coeff == 0.0);
  CHECK(m.floor() == 0.25);
  const auto m2 = ModeProblem::make(3, -1.0, 2);
  CHECK(m2.potential_coeff == 0.0);
  CHECK(m2.floor() == 1.0);
  CHECK_THROWS_AS(ModeProblem::make(3, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModeProblem::make(1, 0.0, 0), std::invalid_argument);
}

TEST_CASE("radial::grid") {
  const auto g = RadialGrid::make(10.0, 3999);
  CHECK(g.h() == doctest::Approx(0.005));
  CHECK(g.t(0) == doctest::Approx(-10.0 + 0.005));
  CHECK(g.t(g.N - 1) == doctest::Approx(10.0 - 0.005));
  CHECK(RadialGrid::with_spacing(10.0, 0.01).N == 1999);
  CHECK(default_points(10.0) == 1999);
  CHECK_THROWS_AS(RadialGrid::make(0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(RadialGrid::make(1.0, 2), std::invalid_argument);
}

TEST_CASE("radial::zero mode pencil is the Dirichlet Laplacian plus gamma squared") {
  const auto grid = RadialGrid::make(5.0, 99);
  const auto mode = ModeProblem::make(3, 0.0, 0);
  const auto p = assemble_mode_pencil(grid, mode);
  const double h = grid.h();
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.a_diag[i] == doctest::Approx(2.0 / h + 0.25 * h).epsilon(1e-14));
    CHECK(p.b_diag[i] == doctest::Approx(h).epsilon(1e-14));
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    CHECK(p.a_off[i] == doctest::Approx(-1.0 / h).epsilon(1e-14));
    CHECK(p.b_off[i] == 0.0);
  }
}

TEST_CASE("radial::identity pencil") {
  TridiagonalPencil p;
  p.a_diag.assign(20, 1.0);
  p.b_diag.assign(20, 1.0);
  p.a_off.assign(19, 0.0);
  p.b_off.assign(19, 0.0);
  const auto r = min_eigenvalue(p);
  CHECK(r.lambda_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.converged);
  CHECK(count_below(p, 0.999) == 0);
  CHECK(count_below(p, 1.001) == 20);
}

TEST_CASE("radial::dense cross-check") {
  for (auto [n, b, k] : std::vector<Case>{{3, 0.0, 0}, {2, 0.0, 0}, {4, 1.0, -2}, {3, -1.0, 2}}) {
    for (auto weight : {MassWeight::hardy, MassWeight::log_squared}) {
      const auto grid = RadialGrid::make(4.0, 50);
      const auto p = assemble_mode_pencil(grid, ModeProblem::make(n, b, k), weight);
      const auto reference = dense_eigenvalues(p);
      const auto r = min_eigenvalue(p);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(std::abs(r.lambda_min - reference(0)) <= 1e-10 * std::max(1.0, reference(0)));
      CHECK(r.converged);
      CHECK(r.residual <= 1e-10);
      for (int idx : {1, 5, 49})
        CHECK(std::abs(nth_eigenvalue(p, idx) - reference(idx)) <= 1e-10 * std::max(1.0, reference(idx)));
      CHECK(count_below(p, 0.5 * (reference(3) + reference(4))) == 4);
    }
  }
  const auto p = assemble_mode_pencil(RadialGrid::make(1.0, 10), ModeProblem::make(3, 0.0, 0));
  CHECK_THROWS_AS(nth_eigenvalue(p, 10), std::out_of_range);
}

TEST_CASE("radial::eigenvector is B-normalized and sign fixed") {
  const auto grid = RadialGrid::make(10.0, 999);
  const auto p = assemble_mode_pencil(grid, ModeProblem::make(3, 0.0, 0));
  const auto r = min_eigenvalue(p);
  double bnorm = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) bnorm += p.b_diag[i] * r.eigenvector[i] * r.eigenvector[i];
  CHECK(bnorm == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.eigenvector[p.size() / 2] > 0.0);
  CHECK(r.bracket_lo <= r.lambda_min);
  CHECK(r.lambda_min <= r.bracket_hi);
}

TEST_CASE("radial::discrete closed form") {
  for (auto [n, b, k] : std::vector<Case>{{3, 0.0, 0}, {2, 0.0, 1}, {5, 2.0, -1}}) {
    const auto mode = ModeProblem::make(n, b, k);
    const auto grid = RadialGrid::make(10.0, 1999);
    const double exact = discrete_closed_form_eigenvalue(mode, grid);
    const double h = grid.h();
    const double manual = mode.floor() + 4.0 / (h * h) * std::pow(std::sin(M_PI * h / (4.0 * grid.T)), 2);
    CHECK(exact == doctest::Approx(manual).epsilon(1e-13));
    CHECK(min_eigenvalue(assemble_mode_pencil(grid, mode)).lambda_min == doctest::Approx(exact).epsilon(1e-11));
    CHECK(std::abs(exact - closed_form_eigenvalue(mode, 10.0)) <= 1e-6);
  }
}

TEST_CASE("radial::n = 3, b = 0, k = 0 at T = 10") {
  const auto mode = ModeProblem::make(3, 0.0, 0);
  const auto r = min_eigenvalue(assemble_mode_pencil(RadialGrid::make(10.0, 3999), mode));
  const double reference = 0.25 + std::pow(M_PI / 20.0, 2);
  CHECK(std::abs(r.lambda_min - reference) <= 1e-4 * reference);
}

TEST_CASE("radial::sharpness sweep") {
  const auto s = sharpness_sweep(3, 0.0, 0, {5, 10, 20, 50, 100});
  CHECK(s.strictly_decreasing);
  CHECK(s.above_floor);
  CHECK(s.rows.back().lambda_min - 0.25 <= 2.6e-4);
  for (const auto& row : s.rows) {
    CHECK(row.converged);
    CHECK(row.abs_err <= 1e-4 * row.closed_form);
  }

  const auto degenerate = sharpness_sweep(2, 0.0, 0, {5, 10, 50});
  for (const auto& row : degenerate.rows)
    CHECK(row.lambda_min == doctest::Approx(std::pow(M_PI / (2 * row.T), 2)).epsilon(1e-4));
  CHECK(degenerate.rows.back().lambda_min < 1e-3);

  const json j = to_json(s);
  CHECK(j.dump().find("lambda_min") != std::string::npos);
  CHECK_THROWS_AS(sharpness_sweep(3, 0.0, 0, {}), std::invalid_argument);
}

TEST_CASE("radial::constraint functional integrates the interpolant") {
  const auto grid = RadialGrid::make(3.0, 599);
  ConstraintSpec spec;
  const double gamma = 0.0;
  const auto g = spec.functional(grid, gamma);
  // w(t) = 1 everywhere in the annulus: int_1^2 r dr = 1.5
  double total = 0.0;
  for (double v : g) total += v;
  CHECK(total == doctest::Approx(1.5).epsilon(1e-12));
  // w(t) = t: int_1^2 log(r) r dr = 2 log 2 - 3/4
  double linear = 0.0;
  for (int i = 0; i < grid.N; ++i) linear += g[i] * grid.t(i);
  CHECK(linear == doctest::Approx(2 * std::log(2.0) - 0.75).epsilon(1e-12));

  ConstraintSpec none;
  none.kind = ConstraintSpec::Kind::none;
  for (double v : none.functional(grid, gamma)) CHECK(v == 0.0);
  ConstraintSpec bad;
  bad.r_lo = 2.0;
  bad.r_hi = 1.0;
  CHECK_THROWS_AS(bad.functional(grid, gamma), std::invalid_argument);
}

TEST_CASE("radial::constrained minimum against dense null-space solve") {
  for (double T : {3.0, 5.0}) {
    const auto grid = RadialGrid::make(T, 50);
    const auto mode = ModeProblem::make(2, 0.0, 0);
    const auto pencil = assemble_mode_pencil(grid, mode, MassWeight::log_squared);
    const auto g = ConstraintSpec{}.functional(grid, mode.gamma);
    const auto r = constrained_min_eigenvalue(pencil, g);
    const double reference = dense_constrained_min(pencil, g);
    CAPTURE(T);
    CHECK(std::abs(r.eigen.lambda_min - reference) <= 1e-10 * std::max(1.0, reference));
    CHECK(r.constraint_residual <= 1e-12);
    CHECK(r.constraint_active);
    CHECK(r.eigen.lambda_min >= r.unconstrained_lambda);
  }
  // a functional orthogonal to the minimizer leaves it unconstrained
  const auto grid = RadialGrid::make(4.0, 51);
  const auto pencil = assemble_mode_pencil(grid, ModeProblem::make(3, 0.0, 0));
  std::vector<double> odd(grid.N, 0.0);
  odd[0] = 1.0;
  odd[grid.N - 1] = -1.0;
  const auto r = constrained_min_eigenvalue(pencil, odd);
  CHECK_FALSE(r.constraint_active);
  CHECK(r.eigen.lambda_min == doctest::Approx(r.unconstrained_lambda).epsilon(1e-12));
  CHECK_THROWS_AS(constrained_min_eigenvalue(pencil, std::vector<double>(grid.N, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(constrained_min_eigenvalue(pencil, std::vector<double>(3, 1.0)), std::invalid_argument);
}

TEST_CASE("radial::unconstrained log-squared weight degenerates") {
  const auto mode = ModeProblem::make(2, 0.0, 0);
  double prev = 1e300;
  for (double T : {5.0, 10.0, 20.0, 50.0}) {
    const auto grid = RadialGrid::make(T, default_points(T));
    const double lambda = min_eigenvalue(assemble_mode_pencil(grid, mode, MassWeight::log_squared)).lambda_min;
    CHECK(lambda < prev);
    prev = lambda;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("radial::constrained log-squared minimum stays positive") {
  const auto mode = ModeProblem::make(2, 0.0, 0);
  double prev = 1e300;
  for (double T : {5.0, 10.0, 20.0}) {
    const auto grid = RadialGrid::make(T, default_points(T));
    const auto r = constrained_mode_eigenvalue(grid, mode, ConstraintSpec{});
    CHECK(r.eigen.lambda_min > 0.5);
    CHECK(r.eigen.lambda_min < prev);
    CHECK(r.constraint_residual <= 1e-12);
    prev = r.eigen.lambda_min;
  }
}

TEST_CASE("radial::excluded mode floor") {
  const auto f = excluded_mode_floor(2, 0.0, 50.0);
  CHECK(f.j == 0);
  CHECK(f.argmin_modes == std::vector<int>{-1, 1});
  CHECK(std::abs(f.floor - (1.0 + std::pow(M_PI / 100.0, 2))) <= 1e-6);
  for (const auto& [k, lambda] : f.per_mode)
    if (std::abs(k) == 2) CHECK(std::abs(lambda - (4.0 + std::pow(M_PI / 100.0, 2))) <= 1e-6);

  const auto g = excluded_mode_floor(3, 1.0, 50.0);
  CHECK(g.argmin_modes == std::vector<int>{-1});
  for (const auto& [k, lambda] : g.per_mode) CHECK(k != 1);
  CHECK_THROWS_AS(excluded_mode_floor(3, 0.0, 10.0), std::invalid_argument);
}

TEST_CASE("radial::remainder check") {
  SUBCASE("K = 0 is the plain mode inequality") {
    for (int i = 0; i < 10; ++i) {
      const BumpProfile f(0.05 + 0.03 * i, 0.5 + 0.04 * i, 2 + i % 3);
      for (double b : {0.0, -1.0, 0.5}) {
        const auto c = remainder_check(f, 3, b, 1.0, 0, RemainderVariant::inverse_square);
        CHECK(c.margin >= 0.0);
        CHECK(c.level_terms.empty());
        CHECK(c.margin == doctest::Approx(c.lhs - c.leading));
      }
    }
  }
  SUBCASE("K = 2 inverse square margins are nonnegative") {
    for (int i = 0; i < 20; ++i) {
      const BumpProfile f(0.38 + 0.01 * i, 0.6 + 0.015 * i);
      const auto c = remainder_check(f, 3, 0.0, 1.0, 2, RemainderVariant::inverse_square);
      CHECK(c.level_terms.size() == 2);
      CHECK(c.margin >= 0.0);
    }
  }
  SUBCASE("support outside the validity interval") {
    CHECK_THROWS_AS(remainder_check(BumpProfile(0.1, 0.5), 3, 0.0, 1.0, 2, RemainderVariant::literal),
                    std::out_of_range);
    CHECK_THROWS_AS(remainder_check(BumpProfile(0.5, 1.5), 3, 0.0, 1.0, 1, RemainderVariant::literal),
                    std::out_of_range);
  }
}

TEST_CASE("radial::ground state profile") {
  const auto g = ground_state_profile(3, 0.0, 0, 10.0, 20.0);
  CHECK(g.floor == 0.25);
  CHECK(g.quotient - g.floor > 0.0);
  CHECK(g.quotient - g.floor < 0.05);
  for (std::size_t i = 0; i < g.t.size(); ++i) {
    if (std::abs(g.t[i]) <= 10.0) CHECK(g.values[i] == std::pow(g.r[i], -0.5));
    if (std::abs(g.t[i]) >= 20.0) CHECK(g.values[i] == 0.0);
  }
  // wider cutoffs leak less
  CHECK(ground_state_profile(3, 0.0, 0, 10.0, 40.0).quotient < g.quotient);
  CHECK_THROWS_AS(ground_state_profile(3, 0.0, 0, 5.0, 5.0), std::invalid_argument);
}

TEST_CASE("radial::smooth step") {
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(2.0) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  const double x = 0.3, d = 1e-6;
  CHECK(smooth_step_derivative(x) == doctest::Approx((smooth_step(x + d) - smooth_step(x - d)) / (2 * d)).epsilon(1e-7));
}

TEST_CASE("radial::minimizer is flat near the origin") {
  const auto grid = RadialGrid::make(50.0, default_points(50.0));
  const auto r = min_eigenvalue(assemble_mode_pencil(grid, ModeProblem::make(3, 0.0, 0)));
  CHECK(flatness_deviation(r, grid, 5.0) <= 0.02);
  CHECK(flatness_deviation(r, grid, 5.0) > 0.0);
}
