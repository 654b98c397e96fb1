// Command-line front end: every subcommand writes a table (CSV) or a
// verification report (JSON) and exits 0 on pass, 1 on a failed check and 2
// on a usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardy/angular.hpp"
#include "hardy/clifford.hpp"
#include "hardy/constants.hpp"
#include "hardy/oracle.hpp"
#include "hardy/radial.hpp"
#include "hardy/suite.hpp"

namespace {

using hardy::json;
using hardy::VerificationReport;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_modes(const std::vector<int>& modes) {
  std::string out;
  for (std::size_t i = 0; i < modes.size(); ++i) out += (i ? ";" : "") + std::to_string(modes[i]);
  return out;
}

struct Output {
  VerificationReport report;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json data;
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

hardy::PointRule point_rule(int points) {
  if (points == 0) return hardy::default_points;
  if (points < 3) throw UsageError("--points must be >= 3");
  return [points](double) { return points; };
}

// constants ------------------------------------------------------------------

struct ConstantsArgs {
  int n = 3;
  std::string b_from = "-2", b_to = "2", step = "0.5";
};

Output run_constants(const ConstantsArgs& a) {
  if (a.n < 2) throw UsageError("--n must be >= 2");
  hardy::Rational from, to, step;
  try {
    from = hardy::parse_rational(a.b_from);
    to = hardy::parse_rational(a.b_to);
    step = hardy::parse_rational(a.step);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (sgn(step) <= 0) throw UsageError("--step must be positive");
  if (to < from) throw UsageError("--b-to must not be below --b-from");
  Output out;
  out.report = VerificationReport("constants");
  out.header = {"n", "b", "gamma", "c_b", "argmin_modes", "degenerate"};
  out.data = json::array();
  for (hardy::Rational b = from; b <= to; b += step) {
    const auto hc = hardy::hardy_constant(a.n, b);
    const double target = (a.n - 2.0 - hc.b) / 2.0;
    double brute = std::numeric_limits<double>::infinity();
    const int window = static_cast<int>(std::abs(target)) + 4;
    for (int k : hardy::admissible_spectrum(a.n, -window, window)) brute = std::min(brute, (k - target) * (k - target));
    out.report.add("b=" + fmt(hc.b), std::abs(hc.c_b - brute), 1e-12, {{"n", a.n}, {"b", hc.b}},
                   {{"c_b", hc.c_b}, {"windowed_min", brute}});
    out.rows.push_back({std::to_string(a.n), fmt(hc.b), fmt(hc.gamma), fmt(hc.c_b), fmt_modes(hc.argmin_modes),
                        hc.degenerate ? "true" : "false"});
    out.data.push_back(hardy::to_json(hc));
  }
  return out;
}

// verify-mode ----------------------------------------------------------------

struct ModeArgs {
  int n = 3;
  double b = 0.0;
  int k = 0;
  std::string T_list = "5,10,20,50";
  int points = 0;
  double tolerance = 1e-4;
};

Output run_verify_mode(const ModeArgs& a) {
  const auto T_list = parse_list(a.T_list, "--T-list");
  for (double T : T_list)
    if (!(T > 0)) throw UsageError("--T-list entries must be positive");
  const auto sweep = hardy::sharpness_sweep(a.n, a.b, a.k, T_list, point_rule(a.points));
  Output out;
  out.report = VerificationReport("verify-mode");
  out.header = {"T", "N", "lambda_min", "closed_form", "abs_err"};
  const json inputs = {{"n", a.n}, {"b", a.b}, {"k", a.k}};
  for (const auto& r : sweep.rows) {
    out.rows.push_back({fmt(r.T), std::to_string(r.N), fmt(r.lambda_min), fmt(r.closed_form), fmt(r.abs_err)});
    json in = inputs;
    in["T"] = r.T;
    in["N"] = r.N;
    out.report.add("T=" + fmt(r.T) + "/closed_form", r.abs_err / r.closed_form, a.tolerance, in,
                   {{"lambda_min", r.lambda_min}, {"closed_form", r.closed_form}, {"residual", r.residual}});
    out.report.add("T=" + fmt(r.T) + "/converged", r.converged ? 0.0 : 1.0, 0.0, in);
  }
  out.report.add("above_floor", sweep.above_floor ? 0.0 : 1.0, 0.0, inputs, {{"floor", sweep.mode.floor()}});
  out.report.add("strictly_decreasing", sweep.strictly_decreasing ? 0.0 : 1.0, 0.0, inputs);
  out.data = hardy::to_json(sweep);
  return out;
}

// verify-constrained ---------------------------------------------------------

struct ConstrainedArgs {
  int n = 2;
  double b = 0.0;
  std::optional<int> k;
  std::string T_list = "5,10,20";
  std::string weight = "log_squared";
  std::string constraint = "annulus";
  double r_lo = 1.0, r_hi = 2.0;
  int points = 0;
};

Output run_verify_constrained(const ConstrainedArgs& a) {
  const auto T_list = parse_list(a.T_list, "--T-list");
  hardy::MassWeight weight;
  if (a.weight == "log_squared" || a.weight == "log-squared")
    weight = hardy::MassWeight::log_squared;
  else if (a.weight == "hardy")
    weight = hardy::MassWeight::hardy;
  else
    throw UsageError("--weight must be hardy or log_squared");
  hardy::ConstraintSpec spec;
  if (a.constraint == "none")
    spec.kind = hardy::ConstraintSpec::Kind::none;
  else if (a.constraint != "annulus")
    throw UsageError("--constraint must be annulus or none");
  spec.r_lo = a.r_lo;
  spec.r_hi = a.r_hi;
  int k;
  if (a.k) {
    k = *a.k;
  } else {
    const auto hc = hardy::hardy_constant(a.n, a.b);
    if (!hc.degenerate) throw UsageError("(n, b) is not degenerate; pass --k explicitly");
    k = *hc.degenerate_mode;
  }
  const auto mode = hardy::ModeProblem::make(a.n, a.b, k);
  const auto rule = point_rule(a.points);
  Output out;
  out.report = VerificationReport("verify-constrained");
  out.header = {"T", "N", "lambda_min", "unconstrained", "constraint_residual", "alignment"};
  out.data = json::array();
  double last = 0.0;
  for (double T : T_list) {
    const auto grid = hardy::RadialGrid::make(T, rule(T));
    const auto r = hardy::constrained_mode_eigenvalue(grid, mode, spec, weight);
    last = r.eigen.lambda_min;
    out.rows.push_back({fmt(T), std::to_string(grid.N), fmt(r.eigen.lambda_min), fmt(r.unconstrained_lambda),
                        fmt(r.constraint_residual), fmt(r.alignment)});
    const json in = {{"n", a.n}, {"b", a.b}, {"k", k}, {"T", T}, {"N", grid.N}, {"weight", a.weight}};
    out.report.add("T=" + fmt(T) + "/positive", r.eigen.lambda_min > 0 ? 0.0 : 1.0, 0.0, in,
                   {{"lambda_min", r.eigen.lambda_min}, {"unconstrained", r.unconstrained_lambda}});
    out.report.add("T=" + fmt(T) + "/constraint_residual", r.constraint_residual, 1e-12, in);
    out.report.add("T=" + fmt(T) + "/converged", r.eigen.converged ? 0.0 : 1.0, 0.0, in);
    out.data.push_back({{"T", T}, {"N", grid.N}, {"lambda_min", r.eigen.lambda_min},
                        {"unconstrained", r.unconstrained_lambda}, {"constraint_active", r.constraint_active}});
  }
  out.data = {{"rows", out.data}, {"C_est", last}};
  return out;
}

// excluded-mode --------------------------------------------------------------

struct ExcludedArgs {
  int n = 2;
  double b = 0.0;
  double T = 50.0;
  int points = 0;
};

Output run_excluded(const ExcludedArgs& a) {
  if (!(a.T > 0)) throw UsageError("--T must be positive");
  const auto hc = hardy::hardy_constant(a.n, a.b);
  if (!hc.degenerate) throw UsageError("(n, b) is not degenerate");
  const auto floor = hardy::excluded_mode_floor(a.n, a.b, a.T, point_rule(a.points));
  Output out;
  out.report = VerificationReport("excluded-mode");
  out.header = {"k", "lambda_min", "closed_form"};
  json per_mode = json::array();
  for (const auto& [k, lambda] : floor.per_mode) {
    const double exact = hardy::closed_form_eigenvalue(hardy::ModeProblem::make(a.n, a.b, k), a.T);
    out.rows.push_back({std::to_string(k), fmt(lambda), fmt(exact)});
    per_mode.push_back({{"k", k}, {"lambda_min", lambda}, {"closed_form", exact}});
  }
  const json in = {{"n", a.n}, {"b", a.b}, {"T", a.T}};
  out.report.add("floor_at_least_one", 1.0 - floor.floor, 0.0, in, {{"floor", floor.floor}});
  bool adjacent = !floor.argmin_modes.empty();
  for (int k : floor.argmin_modes) adjacent = adjacent && std::abs(k - floor.j) == 1;
  out.report.add("argmin_adjacent", adjacent ? 0.0 : 1.0, 0.0, in, {{"argmin_modes", floor.argmin_modes}});
  out.data = {{"j", floor.j}, {"floor", floor.floor}, {"argmin_modes", floor.argmin_modes}, {"per_mode", per_mode}};
  return out;
}

// spectrum -------------------------------------------------------------------

struct SpectrumArgs {
  int n = 3;
  int degree = 2;
  bool basis = false;
};

Output run_spectrum(const SpectrumArgs& a) {
  if (a.n < 1) throw UsageError("--n must be >= 1");
  if (a.degree < 0) throw UsageError("--degree must be >= 0");
  const auto rep = hardy::build_generators(a.n);
  const auto spectrum = hardy::spectrum_bruteforce(rep, a.degree);
  Output out;
  out.report = VerificationReport("spectrum");
  out.header = {"degree", "k", "multiplicity"};
  for (const auto& e : spectrum.entries)
    out.rows.push_back({std::to_string(e.degree), std::to_string(e.eigenvalue), std::to_string(e.multiplicity())});
  for (const auto& d : spectrum.degrees) {
    int forbidden = 0;
    for (const auto& e : spectrum.entries)
      if (e.degree == d.degree && !hardy::is_admissible(a.n, e.eigenvalue)) ++forbidden;
    const json in = {{"n", a.n}, {"degree", d.degree}};
    out.report.add("d=" + std::to_string(d.degree) + "/complete", std::abs(d.found - d.dimension), 0.0, in,
                   {{"dimension", d.dimension}, {"found", d.found}});
    out.report.add("d=" + std::to_string(d.degree) + "/admissible", forbidden, 0.0, in);
  }
  out.data = hardy::to_json(spectrum, a.basis);
  out.data["generators"] = hardy::to_json(rep);
  return out;
}

// oracle ---------------------------------------------------------------------

struct OracleArgs {
  int n = 3;
  double b = 0.0;
  int k = 0;
  std::string h_list = "0.02,0.01,0.005";
  double r_inner = 0.5, r_outer = 1.5;
  double tolerance = 0.02;
};

Output run_oracle(const OracleArgs& a) {
  if (a.n != 2 && a.n != 3) throw UsageError("--n must be 2 or 3");
  const auto h_list = parse_list(a.h_list, "--h-list");
  const auto rep = hardy::build_generators(a.n);
  const int degree = std::abs(a.k) + 1;
  const auto spectrum = hardy::spectrum_bruteforce(rep, degree);
  const auto table = hardy::oracle_convergence(rep, spectrum, a.b, a.k, a.r_inner, a.r_outer, h_list);
  Output out;
  out.report = VerificationReport("oracle");
  out.header = {"h", "cartesian", "polar", "rel_diff", "observed_order"};
  for (const auto& r : table.rows)
    out.rows.push_back({fmt(r.h), fmt(r.cartesian), fmt(r.polar), fmt(r.rel_diff),
                        r.observed_order ? fmt(*r.observed_order) : ""});
  const json in = {{"n", a.n}, {"b", a.b}, {"k", a.k}, {"r_inner", a.r_inner}, {"r_outer", a.r_outer}};
  const auto& fine = table.rows.back();
  out.report.add("rel_diff", fine.rel_diff, a.tolerance, in, {{"h", fine.h}});
  if (fine.observed_order)
    out.report.add("observed_order", std::abs(*fine.observed_order - 2.0), 0.3, in,
                   {{"observed_order", *fine.observed_order}});
  out.data = hardy::to_json(table);
  return out;
}

// remainder ------------------------------------------------------------------

struct RemainderArgs {
  int n = 3;
  double b = 0.0;
  double R = 1.0;
  int K = 1;
  std::string variant = "inverse-square";
  std::string power = "printed";
  int profiles = 20;
};

Output run_remainder(const RemainderArgs& a) {
  hardy::RemainderVariant variant;
  hardy::RadialPower power;
  try {
    variant = hardy::parse_remainder_variant(a.variant);
    power = hardy::parse_radial_power(a.power);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.K < 0) throw UsageError("--K must be >= 0");
  if (!(a.R > 0)) throw UsageError("--R must be positive");
  if (a.profiles < 1) throw UsageError("--profiles must be >= 1");
  const auto weights = hardy::RemainderWeights::make(a.R, a.K, variant, power);
  const double lo = weights.valid_lo, hi = weights.valid_hi;
  Output out;
  out.report = VerificationReport("remainder");
  out.header = {"r_inner", "r_outer", "power", "lhs", "leading", "remainder", "margin"};
  out.data = json::array();
  const bool asserted = variant == hardy::RemainderVariant::inverse_square;
  for (int i = 0; i < a.profiles; ++i) {
    const double s = a.profiles == 1 ? 0.0 : static_cast<double>(i) / (a.profiles - 1);
    const double inner = lo + (hi - lo) * (0.02 + 0.76 * s);
    const double outer = inner + (hi - inner) * (0.2 + 0.665 * s);
    const hardy::BumpProfile profile(inner, outer, 2 + i % 3);
    const auto check = hardy::remainder_check(profile, a.n, a.b, a.R, a.K, variant, power);
    double remainder = 0.0;
    for (double t : check.level_terms) remainder += t;
    out.rows.push_back({fmt(inner), fmt(outer), std::to_string(profile.power), fmt(check.lhs), fmt(check.leading),
                        fmt(remainder), fmt(check.margin)});
    const json in = {{"n", a.n}, {"b", a.b}, {"R", a.R}, {"K", a.K}, {"variant", a.variant},
                     {"r_inner", inner}, {"r_outer", outer}, {"power", profile.power}};
    out.report.add("profile=" + std::to_string(i), -check.margin / check.lhs, asserted ? 0.0 : 1e300, in,
                   {{"lhs", check.lhs}, {"leading", check.leading}, {"levels", check.level_terms},
                    {"margin", check.margin}});
  }
  out.data = {{"valid_interval", {lo, hi}}, {"mode", hardy::hardy_constant(a.n, a.b).argmin_modes.front()}};
  return out;
}

// full-suite -----------------------------------------------------------------

struct SuiteArgs {
  std::string criteria;
  std::string fault_inject;
};

Output run_full_suite(const SuiteArgs& a) {
  hardy::SuiteOptions options;
  if (!a.criteria.empty())
    for (double id : parse_list(a.criteria, "--criteria")) {
      if (id != std::floor(id) || id < 1 || id > hardy::kCriterionCount)
        throw UsageError("--criteria entries must be integers in 1.." + std::to_string(hardy::kCriterionCount));
      options.criteria.insert(static_cast<int>(id));
    }
  if (a.fault_inject == "clifford")
    options.tamper_clifford = true;
  else if (!a.fault_inject.empty())
    throw UsageError("--fault-inject supports only 'clifford'");
  const auto results = hardy::run_criteria(options);
  Output out;
  out.report = hardy::combine(results);
  out.header = {"case", "margin", "tolerance", "pass"};
  for (const auto& c : out.report.cases())
    out.rows.push_back({c.name, fmt(c.margin), fmt(c.tolerance), c.pass() ? "true" : "false"});
  out.data = json::array();
  for (const auto& r : results)
    out.data.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.report.pass()}});
  return out;
}

// ---------------------------------------------------------------------------

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string render(const Output& out, const std::string& format) {
  if (format == "json") {
    json j = out.report.to_json();
    j["data"] = out.data;
    return j.dump(2) + "\n";
  }
  std::string text;
  for (std::size_t i = 0; i < out.header.size(); ++i) text += (i ? "," : "") + csv_field(out.header[i]);
  text += "\n";
  for (const auto& row : out.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + csv_field(row[i]);
    text += "\n";
  }
  return text;
}

/// Splices key=value lines from --config files in after the subcommand name,
/// skipping keys already present on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 1; i + 1 < args.size(); ++i) {
    if (args[i] != "--config") continue;
    const std::string path = args[i + 1];
    args.erase(args.begin() + i, args.begin() + i + 2);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::vector<std::string> extra;
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      if (trim(line).empty()) continue;
      if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
      const std::string key = "--" + trim(line.substr(0, eq));
      if (std::find(args.begin(), args.end(), key) != args.end()) continue;
      const std::string value = trim(line.substr(eq + 1));
      extra.push_back(key);
      if (value != "true") extra.push_back(value);
    }
    std::size_t sub = 1;
    while (sub < args.size() && args[sub].rfind("-", 0) == 0) ++sub;
    args.insert(args.begin() + std::min(sub + 1, args.size()), extra.begin(), extra.end());
    --i;
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp Hardy constants for the weighted Dirac form: computation and numerical verification", "hardy"};
  app.require_subcommand(1);
  std::string format = "csv";
  std::string output;

  auto common = [&](CLI::App* sub, const std::string& default_format = "csv") {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->default_str(default_format);
    sub->add_option("--output,-o", output, "output file (default: $HARDY_OUTPUT_DIR/<command>.<format> or stdout)");
  };

  ConstantsArgs constants;
  auto* c = app.add_subcommand("constants", "table of c_b over a grid of b");
  c->add_option("--n", constants.n, "dimension")->capture_default_str();
  c->add_option("--b-from", constants.b_from)->capture_default_str();
  c->add_option("--b-to", constants.b_to)->capture_default_str();
  c->add_option("--step", constants.step)->capture_default_str();
  common(c);

  ModeArgs mode;
  auto* vm = app.add_subcommand("verify-mode", "mode eigenvalue sweep against the closed form");
  vm->add_option("--n", mode.n)->capture_default_str();
  vm->add_option("--b", mode.b)->capture_default_str();
  vm->add_option("--k", mode.k)->capture_default_str();
  vm->add_option("--T-list", mode.T_list, "comma separated half-widths in log r")->capture_default_str();
  vm->add_option("--points", mode.points, "interior points (0: h = T/1000)")->capture_default_str();
  vm->add_option("--tolerance", mode.tolerance, "relative tolerance against the closed form")->capture_default_str();
  common(vm);

  ConstrainedArgs constrained;
  auto* vc = app.add_subcommand("verify-constrained", "constrained minimum for a degenerate mode");
  vc->add_option("--n", constrained.n)->capture_default_str();
  vc->add_option("--b", constrained.b)->capture_default_str();
  vc->add_option("--k", constrained.k, "mode (default: the degenerate mode)");
  vc->add_option("--T-list", constrained.T_list)->capture_default_str();
  vc->add_option("--weight", constrained.weight, "hardy or log_squared")->capture_default_str();
  vc->add_option("--constraint", constrained.constraint, "annulus or none")->capture_default_str();
  vc->add_option("--r-lo", constrained.r_lo)->capture_default_str();
  vc->add_option("--r-hi", constrained.r_hi)->capture_default_str();
  vc->add_option("--points", constrained.points)->capture_default_str();
  common(vc);

  ExcludedArgs excluded;
  auto* ex = app.add_subcommand("excluded-mode", "floor over the modes next to the degenerate one");
  ex->add_option("--n", excluded.n)->capture_default_str();
  ex->add_option("--b", excluded.b)->capture_default_str();
  ex->add_option("--T", excluded.T)->capture_default_str();
  ex->add_option("--points", excluded.points)->capture_default_str();
  common(ex);

  SpectrumArgs spectrum;
  auto* sp = app.add_subcommand("spectrum", "exact spectrum of L by degree");
  sp->add_option("--n", spectrum.n)->capture_default_str();
  sp->add_option("--degree", spectrum.degree)->capture_default_str();
  sp->add_flag("--basis", spectrum.basis, "include eigenbases in JSON");
  common(sp, "json");

  OracleArgs oracle;
  auto* orc = app.add_subcommand("oracle", "Cartesian lattice against the polar reduction");
  orc->add_option("--n", oracle.n)->capture_default_str();
  orc->add_option("--b", oracle.b)->capture_default_str();
  orc->add_option("--k", oracle.k)->capture_default_str();
  orc->add_option("--h-list", oracle.h_list, "lattice spacings")->capture_default_str();
  orc->add_option("--r-inner", oracle.r_inner)->capture_default_str();
  orc->add_option("--r-outer", oracle.r_outer)->capture_default_str();
  orc->add_option("--tolerance", oracle.tolerance)->capture_default_str();
  common(orc);

  RemainderArgs remainder;
  auto* rm = app.add_subcommand("remainder", "iterated-log remainder terms on a bump family");
  rm->add_option("--n", remainder.n)->capture_default_str();
  rm->add_option("--b", remainder.b)->capture_default_str();
  rm->add_option("--R", remainder.R)->capture_default_str();
  rm->add_option("--K", remainder.K)->capture_default_str();
  rm->add_option("--variant", remainder.variant, "literal or inverse-square")->capture_default_str();
  rm->add_option("--power", remainder.power, "printed or corrected")->capture_default_str();
  rm->add_option("--profiles", remainder.profiles)->capture_default_str();
  common(rm);

  SuiteArgs suite;
  auto* fs = app.add_subcommand("full-suite", "run the verification battery");
  fs->add_option("--criteria", suite.criteria, "comma separated subset of 1..13");
  fs->add_option("--fault-inject", suite.fault_inject, "tamper with a component (clifford)");
  common(fs, "json");

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* active = app.get_subcommands().front();
  if (active->count("--format") == 0 && (active == sp || active == fs)) format = "json";
  const std::string name = active->get_name();

  Output out;
  try {
    if (active == c) out = run_constants(constants);
    else if (active == vm) out = run_verify_mode(mode);
    else if (active == vc) out = run_verify_constrained(constrained);
    else if (active == ex) out = run_excluded(excluded);
    else if (active == sp) out = run_spectrum(spectrum);
    else if (active == orc) out = run_oracle(oracle);
    else if (active == rm) out = run_remainder(remainder);
    else out = run_full_suite(suite);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }

  const std::string text = render(out, format);
  std::string path = output;
  if (path.empty()) {
    if (const char* dir = std::getenv("HARDY_OUTPUT_DIR"); dir && *dir)
      path = (std::filesystem::path(dir) / (name + "." + format)).string();
  }
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return 2;
    }
    file << text;
  }
  std::cerr << name << ": " << out.report.pass_count() << "/" << out.report.cases().size() << " checks passed\n";
  return out.report.pass() ? 0 : 1;
}
