#include "hardy/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hardy {

double finite_or_sentinel(double value) {
  if (std::isnan(value)) return 1e300;
  if (std::isinf(value)) return value > 0 ? 1e300 : -1e300;
  return value;
}

CaseRecord& VerificationReport::add(CaseRecord record) {
  record.margin = finite_or_sentinel(record.margin);
  record.tolerance = finite_or_sentinel(record.tolerance);
  cases_.push_back(std::move(record));
  return cases_.back();
}

CaseRecord& VerificationReport::add(std::string name, double margin, double tolerance, json inputs,
                                    json values) {
  return add(CaseRecord{std::move(name), std::move(inputs), std::move(values), margin, tolerance});
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (const auto& record : other.cases_) {
    CaseRecord copy = record;
    copy.name = prefix + copy.name;
    cases_.push_back(std::move(copy));
  }
}

bool VerificationReport::pass() const {
  return std::all_of(cases_.begin(), cases_.end(), [](const CaseRecord& c) { return c.pass(); });
}

std::size_t VerificationReport::pass_count() const {
  return static_cast<std::size_t>(
      std::count_if(cases_.begin(), cases_.end(), [](const CaseRecord& c) { return c.pass(); }));
}

double VerificationReport::worst_excess() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : cases_) worst = std::max(worst, c.margin - c.tolerance);
  return cases_.empty() ? 0.0 : finite_or_sentinel(worst);
}

json VerificationReport::to_json() const {
  json cases = json::array();
  for (const auto& c : cases_) {
    cases.push_back({{"name", c.name},
                     {"inputs", c.inputs},
                     {"values", c.values},
                     {"margin", c.margin},
                     {"tolerance", c.tolerance},
                     {"pass", c.pass()}});
  }
  return {{"command", command_},
          {"version", kArtifactVersion},
          {"cases", std::move(cases)},
          {"summary",
           {{"cases", cases_.size()},
            {"passed", pass_count()},
            {"failed", cases_.size() - pass_count()},
            {"worst_excess", worst_excess()},
            {"pass", pass()}}}};
}

VerificationReport VerificationReport::from_json(const json& j) {
  VerificationReport report(j.at("command").get<std::string>());
  for (const auto& c : j.at("cases")) {
    CaseRecord record{c.at("name").get<std::string>(), c.at("inputs"), c.at("values"),
                      c.at("margin").get<double>(), c.at("tolerance").get<double>()};
    if (record.pass() != c.at("pass").get<bool>())
      throw std::runtime_error("report case '" + record.name + "': pass flag disagrees with margin");
    report.cases_.push_back(std::move(record));
  }
  if (report.pass() != j.at("summary").at("pass").get<bool>())
    throw std::runtime_error("report summary pass flag disagrees with cases");
  return report;
}

}  // namespace hardy
