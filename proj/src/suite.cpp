#include "hardy/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "hardy/angular.hpp"
#include "hardy/clifford.hpp"
#include "hardy/constants.hpp"
#include "hardy/oracle.hpp"
#include "hardy/radial.hpp"

namespace hardy {
namespace {

constexpr double kInformational = 1e300;
constexpr std::uint64_t kSeed = 20240917;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Time budgets enter reports only when exceeded.
double over_budget(double elapsed, double budget) { return elapsed > budget ? elapsed : 0.0; }

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

VerificationReport c01_constants() {
  VerificationReport report;
  struct Expected {
    int n;
    long b;
    Rational c;
    std::vector<int> argmin;
    bool degenerate;
  };
  const std::vector<Expected> table = {
      {3, 0, Rational(1, 4), {0}, false},
      {3, -1, Rational(1), {0, 2}, false},
      {2, 0, Rational(0), {0}, true},
  };
  for (const auto& e : table) {
    const auto hc = hardy_constant(e.n, Rational(e.b));
    const bool match = hc.c_b == e.c.get_d() && hc.argmin_modes == e.argmin && hc.degenerate == e.degenerate &&
                       (!e.degenerate || hc.degenerate_mode == e.argmin.front());
    report.add("c_b(n=" + std::to_string(e.n) + ",b=" + std::to_string(e.b) + ")", match ? 0.0 : 1.0, 0.0,
               {{"n", e.n}, {"b", e.b}}, to_json(hc));
  }
  return report;
}

VerificationReport c02_bruteforce() {
  VerificationReport report;
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> dist(-6.0, 6.0);
  for (int n = 2; n <= 6; ++n) {
    double worst = 0.0;
    double worst_b = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const double b = dist(rng);
      const double target = (n - 2.0 - b) / 2.0;
      double brute = std::numeric_limits<double>::infinity();
      for (int k : admissible_spectrum(n, -12, 12)) brute = std::min(brute, (k - target) * (k - target));
      const double closed = hardy_constant(n, b).c_b;
      const double err = std::abs(closed - brute) / std::max(1.0, brute);
      if (err > worst) {
        worst = err;
        worst_b = b;
      }
    }
    report.add("windowed_min(n=" + std::to_string(n) + ")", worst, 1e-12, {{"n", n}, {"samples", 200}},
               {{"worst_relative_error", worst}, {"worst_b", worst_b}});
  }
  return report;
}

VerificationReport c03_clifford(bool tamper) {
  VerificationReport report;
  for (int n = 1; n <= 8; ++n) {
    CliffordRep rep = build_generators(n);
    if (tamper && n == 3) rep.generators[0] = rep.generators[0] + Matrix<GaussInt>::identity(rep.m);
    const auto check = verify_clifford(rep);
    report.merge(check, "n=" + std::to_string(n) + "/");
    const int expected_m = 1 << ((n + 1) / 2);
    report.add("n=" + std::to_string(n) + "/spinor_dimension", std::abs(rep.m - expected_m), 0.0, {{"n", n}},
               {{"m", rep.m}, {"two_pow_ceil_half_n", expected_m}});
  }
  return report;
}

VerificationReport c04_identities() {
  VerificationReport report;
  std::mt19937_64 rng(kSeed + 4);
  for (int n = 2; n <= 4; ++n) {
    const auto rep = build_generators(n);
    for (int d = 0; d <= 4; ++d) {
      int dirac_failures = 0;
      double polar_failures = 0.0;
      const int samples = 3;
      for (int s = 0; s < samples; ++s) {
        const auto p = random_homogeneous_spinor(n, rep.m, d, rng);
        if (!(apply_dirac(rep, apply_dirac(rep, p)) == laplacian(p))) ++dirac_failures;
        polar_failures += verify_polar_identity(rep, p).worst_excess() > 0 ? 1.0 : 0.0;
      }
      const json inputs = {{"n", n}, {"degree", d}, {"samples", samples}};
      report.add("dirac_squared(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")", dirac_failures, 0.0,
                 inputs);
      report.add("polar(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")", polar_failures, 0.0, inputs);
      const auto beltrami = verify_beltrami_relation(rep, d);
      report.add("beltrami(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")",
                 beltrami.pass() ? 0.0 : 1.0 + std::max(0.0, beltrami.worst_excess()), 0.0, inputs);
    }
  }
  return report;
}

VerificationReport c05_spectrum() {
  VerificationReport report;
  const auto spectrum = spectrum_bruteforce(build_generators(3), 3);
  for (const auto& deg : spectrum.degrees) {
    json eigen = json::array();
    int forbidden = 0;
    for (const auto& e : spectrum.entries) {
      if (e.degree != deg.degree) continue;
      eigen.push_back({{"k", e.eigenvalue}, {"multiplicity", e.multiplicity()}});
      if (!is_admissible(3, e.eigenvalue)) ++forbidden;
    }
    const json inputs = {{"n", 3}, {"degree", deg.degree}};
    report.add("completeness(d=" + std::to_string(deg.degree) + ")", std::abs(deg.found - deg.dimension), 0.0,
               inputs, {{"dimension", deg.dimension}, {"found", deg.found}, {"eigenvalues", eigen}});
    report.add("excluded_eigenvalue(d=" + std::to_string(deg.degree) + ")", forbidden, 0.0, inputs);
  }
  return report;
}

VerificationReport c06_mode_oracle() {
  VerificationReport report;
  std::mt19937_64 rng(kSeed + 6);
  std::uniform_int_distribution<int> pick_n(2, 4);
  std::uniform_real_distribution<double> pick_b(-3.0, 3.0);
  const double T = 10.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = pick_n(rng);
    const double b = pick_b(rng);
    const auto modes = admissible_spectrum(n, -3, 3);
    std::uniform_int_distribution<std::size_t> pick_k(0, modes.size() - 1);
    const int k = modes[pick_k(rng)];
    const auto mode = ModeProblem::make(n, b, k);
    const double exact = closed_form_eigenvalue(mode, T);

    std::vector<double> log_h, log_err;
    double lambda_fine = 0.0;
    double slowest = 0.0;
    bool converged = true;
    for (int N : {999, 1999, 3999}) {
      const auto grid = RadialGrid::make(T, N);
      const Stopwatch watch;
      const auto eig = min_eigenvalue(assemble_mode_pencil(grid, mode));
      slowest = std::max(slowest, watch.seconds());
      converged = converged && eig.converged;
      log_h.push_back(std::log(grid.h()));
      log_err.push_back(std::log(std::abs(eig.lambda_min - exact)));
      lambda_fine = eig.lambda_min;
    }
    const double rel = std::abs(lambda_fine - exact) / exact;
    const double slope = least_squares_slope(log_h, log_err);
    const std::string tag = "trial=" + std::to_string(trial);
    const json inputs = {{"n", n}, {"b", b}, {"k", k}, {"T", T}, {"N", 3999}};
    report.add(tag + "/relative_error", rel, 1e-4, inputs,
               {{"lambda_min", lambda_fine}, {"closed_form", exact}, {"converged", converged}});
    report.add(tag + "/slope", std::abs(slope - 2.0), 0.3, inputs, {{"slope", slope}});
    report.add(tag + "/runtime", over_budget(slowest, 1.0), 1.0, inputs);
    report.add(tag + "/converged", converged ? 0.0 : 1.0, 0.0, inputs);
  }
  return report;
}

VerificationReport c07_sharpness() {
  VerificationReport report;
  const std::vector<double> T_list = {5, 10, 20, 50, 100};
  for (auto [n, b] : std::vector<std::pair<int, double>>{{3, 0.0}, {3, -1.0}, {4, 1.0}}) {
    const auto hc = hardy_constant(n, b);
    for (int k : hc.argmin_modes) {
      const auto sweep = sharpness_sweep(n, b, k, T_list);
      const std::string tag = "n=" + std::to_string(n) + ",b=" + json(b).dump() + ",k=" + std::to_string(k);
      const json inputs = {{"n", n}, {"b", b}, {"k", k}, {"T_list", T_list}};
      report.add(tag + "/gap_T100", sweep.rows.back().lambda_min - hc.c_b, 3e-4, inputs, to_json(sweep));
      report.add(tag + "/strictly_decreasing", sweep.strictly_decreasing ? 0.0 : 1.0, 0.0, inputs);
      report.add(tag + "/above_floor", sweep.above_floor ? 0.0 : 1.0, 0.0, inputs);
    }
  }
  return report;
}

VerificationReport c08_excluded_floor() {
  VerificationReport report;
  for (auto [n, b] : std::vector<std::pair<int, double>>{{2, 0.0}, {3, 1.0}}) {
    const auto floor = excluded_mode_floor(n, b, 50.0);
    json per_mode = json::array();
    for (const auto& [k, lambda] : floor.per_mode) per_mode.push_back({{"k", k}, {"lambda_min", lambda}});
    const std::string tag = "n=" + std::to_string(n) + ",b=" + json(b).dump();
    const json inputs = {{"n", n}, {"b", b}, {"T", 50}};
    report.add(tag + "/floor_window", std::max(1.0 - floor.floor, floor.floor - 1.0 - 1e-3), 0.0, inputs,
               {{"j", floor.j}, {"floor", floor.floor}, {"per_mode", per_mode}});
    bool neighbours = !floor.argmin_modes.empty();
    for (int k : floor.argmin_modes) neighbours = neighbours && std::abs(k - floor.j) == 1;
    report.add(tag + "/argmin_adjacent", neighbours ? 0.0 : 1.0, 0.0, inputs,
               {{"argmin_modes", floor.argmin_modes}});
  }
  return report;
}

VerificationReport c09_constrained() {
  VerificationReport report;
  const std::vector<double> T_list = {5, 10, 20};
  for (auto [n, b] : std::vector<std::pair<int, double>>{{2, 0.0}, {3, 1.0}}) {
    const auto hc = hardy_constant(n, b);
    const auto mode = ModeProblem::make(n, b, *hc.degenerate_mode);
    json rows = json::array();
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double worst_constraint = 0.0;
    double last = 0.0;
    for (double T : T_list) {
      const auto grid = RadialGrid::make(T, default_points(T));
      const auto result = constrained_mode_eigenvalue(grid, mode, ConstraintSpec{});
      lo = std::min(lo, result.eigen.lambda_min);
      hi = std::max(hi, result.eigen.lambda_min);
      worst_constraint = std::max(worst_constraint, result.constraint_residual);
      last = result.eigen.lambda_min;
      rows.push_back({{"T", T},
                      {"lambda_min", result.eigen.lambda_min},
                      {"unconstrained", result.unconstrained_lambda},
                      {"constraint_residual", result.constraint_residual},
                      {"converged", result.eigen.converged}});
    }
    const std::string tag = "n=" + std::to_string(n) + ",b=" + json(b).dump();
    const json inputs = {{"n", n}, {"b", b}, {"j", mode.k}, {"T_list", T_list}, {"weight", "log_squared"}};
    report.add(tag + "/positive", 0.01 - lo, 0.0, inputs, {{"rows", rows}, {"C_est", last}});
    report.add(tag + "/stabilized", hi / lo - 2.0, 0.0, inputs, {{"ratio", hi / lo}});
    report.add(tag + "/constraint_satisfied", worst_constraint, 1e-12, inputs);
  }
  return report;
}

VerificationReport c10_oracle() {
  VerificationReport report;
  const auto rep = build_generators(3);
  const auto spectrum = spectrum_bruteforce(rep, 1);
  const double r_inner = 0.5, r_outer = 1.5;
  const double span = r_outer - r_inner;
  for (int k : {0, -1}) {
    for (double b : {0.0, -1.0}) {
      const auto table =
          oracle_convergence(rep, spectrum, b, k, r_inner, r_outer, {span / 50, span / 100, span / 200});
      const auto& fine = table.rows.back();
      const std::string tag = "k=" + std::to_string(k) + ",b=" + json(b).dump();
      const json inputs = {{"n", 3}, {"b", b}, {"k", k}, {"r_inner", r_inner}, {"r_outer", r_outer}};
      report.add(tag + "/rel_diff", fine.rel_diff, 0.02, inputs, to_json(table));
      report.add(tag + "/order", std::abs(fine.observed_order.value_or(0.0) - 2.0), 0.3, inputs,
                 {{"observed_order", fine.observed_order.value_or(0.0)}});
    }
  }
  return report;
}

VerificationReport c11_ckn() {
  VerificationReport report;
  const auto grid = AnnulusGrid::make(3, 0.5, 1.5, 1.0 / 200);
  const ScalarTestFunction u{BumpProfile(0.5, 1.5), 0.3};
  for (double a : {-2.0, 0.0, 2.0}) report.merge(verify_ckn_identity(a, u, grid, 1e-3), "a=" + json(a).dump() + "/");
  return report;
}

VerificationReport c12_sobolev() {
  VerificationReport report;
  const auto spectrum = spectrum_bruteforce(build_generators(3), 1);
  for (double b : {0.0, -1.0}) {
    const BumpProfile base(0.5, 1.5);
    const double q0 = sobolev_quotient(SeparableTestFunction::single_mode(spectrum, 0, base), 3, b);
    double worst = 0.0;
    json dilations = json::array();
    for (double lambda : {0.25, 0.5, 2.0, 4.0}) {
      const double q = sobolev_quotient(SeparableTestFunction::single_mode(spectrum, 0, base.dilated(lambda)), 3, b);
      worst = std::max(worst, std::abs(q / q0 - 1.0));
      dilations.push_back({{"lambda", lambda}, {"quotient", q}});
    }
    const std::string tag = "b=" + json(b).dump();
    report.add(tag + "/dilation_invariance", worst, 1e-8, {{"n", 3}, {"b", b}},
               {{"quotient", q0}, {"dilations", dilations}});

    double lowest = std::numeric_limits<double>::infinity();
    json family = json::array();
    for (int i = 0; i < 20; ++i) {
      const double inner = 0.2 + 0.1 * (i % 5);
      const double outer = inner + 0.4 + 0.3 * (i / 5);
      const int power = 2 + i % 2;
      const int k = i % 4 < 2 ? 0 : -1;
      const double q =
          sobolev_quotient(SeparableTestFunction::single_mode(spectrum, k, BumpProfile(inner, outer, power)), 3, b);
      lowest = std::min(lowest, q);
      family.push_back({{"r_inner", inner}, {"r_outer", outer}, {"power", power}, {"k", k}, {"quotient", q}});
    }
    report.add(tag + "/family_positive", lowest > 0.0 ? 0.0 : 1.0, 0.0, {{"n", 3}, {"b", b}, {"members", 20}},
               {{"C_lower_observed", lowest}, {"family", family}});
  }
  return report;
}

VerificationReport c13_remainder() {
  VerificationReport report;
  const int n = 3;
  const double b = 0.0;
  const double R = 1.0;
  for (int K : {0, 1, 2}) {
    for (auto variant : {RemainderVariant::inverse_square, RemainderVariant::literal}) {
      if (K == 0 && variant == RemainderVariant::literal) continue;
      const auto weights = RemainderWeights::make(R, K, variant);
      const double lo = weights.valid_lo, hi = weights.valid_hi;
      double worst_deficit = -std::numeric_limits<double>::infinity();
      json margins = json::array();
      for (int i = 0; i < 20; ++i) {
        const double inner = lo + (hi - lo) * (0.02 + 0.04 * i);
        const double outer = inner + (hi - inner) * (0.2 + 0.035 * i);
        const BumpProfile profile(inner, std::min(outer, hi - 1e-3 * (hi - lo)), 2 + i % 3);
        const auto check = remainder_check(profile, n, b, R, K, variant);
        worst_deficit = std::max(worst_deficit, -check.margin / check.lhs);
        margins.push_back({{"r_inner", profile.r_inner},
                           {"r_outer", profile.r_outer},
                           {"power", profile.power},
                           {"lhs", check.lhs},
                           {"leading", check.leading},
                           {"levels", check.level_terms},
                           {"margin", check.margin}});
      }
      const bool asserted = variant == RemainderVariant::inverse_square;
      report.add("K=" + std::to_string(K) + "/" + to_string(variant), worst_deficit,
                 asserted ? 0.0 : kInformational,
                 {{"n", n}, {"b", b}, {"R", R}, {"K", K}, {"variant", to_string(variant)}, {"valid", {lo, hi}}},
                 {{"worst_relative_deficit", worst_deficit}, {"profiles", margins}});
    }
  }
  return report;
}

}  // namespace

std::string criterion_title(int id) {
  static const char* titles[] = {
      "constants table",
      "closed form equals windowed minimum",
      "Clifford relations and spinor dimension",
      "exact operator identities",
      "angular spectrum of L (n = 3)",
      "mode eigenvalue against closed form",
      "sharpness of c_b",
      "excluded-mode floor",
      "constrained log-weight eigenvalue",
      "Cartesian against polar quadratic form",
      "CKN identity",
      "Sobolev quotient",
      "remainder series",
  };
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("unknown criterion " + std::to_string(id));
  return titles[id - 1];
}

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  CriterionResult out;
  out.id = id;
  out.title = criterion_title(id);
  switch (id) {
    case 1: out.report = c01_constants(); break;
    case 2: out.report = c02_bruteforce(); break;
    case 3: out.report = c03_clifford(options.tamper_clifford); break;
    case 4: out.report = c04_identities(); break;
    case 5: out.report = c05_spectrum(); break;
    case 6: out.report = c06_mode_oracle(); break;
    case 7: out.report = c07_sharpness(); break;
    case 8: out.report = c08_excluded_floor(); break;
    case 9: out.report = c09_constrained(); break;
    case 10: out.report = c10_oracle(); break;
    case 11: out.report = c11_ckn(); break;
    case 12: out.report = c12_sobolev(); break;
    case 13: out.report = c13_remainder(); break;
  }
  return out;
}

std::vector<CriterionResult> run_criteria(const SuiteOptions& options) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id)
    if (options.criteria.empty() || options.criteria.count(id)) results.push_back(run_criterion(id, options));
  return results;
}

VerificationReport combine(const std::vector<CriterionResult>& results, const std::string& command) {
  VerificationReport report(command);
  for (const auto& r : results) {
    char prefix[8];
    std::snprintf(prefix, sizeof prefix, "C%02d/", r.id);
    report.merge(r.report, prefix);
  }
  return report;
}

PolySpinor random_homogeneous_spinor(int n, int m, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  PolySpinor p(n, m);
  for (const auto& alpha : monomials_of_degree(n, degree)) {
    Spinor c(m);
    for (auto& v : c) v = ComplexRational(Rational(coeff(rng)), Rational(coeff(rng)));
    p.add_term(alpha, c);
  }
  return p;
}

}  // namespace hardy
