#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hardy {

using json = nlohmann::json;

inline constexpr const char* kArtifactVersion = "0.3.1";

/// One checked case. A case passes iff margin <= tolerance; margins are
/// oriented so that smaller is better (deviation, deficit, excess).
struct CaseRecord {
  std::string name;
  json inputs = json::object();
  json values = json::object();
  double margin = 0.0;
  double tolerance = 0.0;

  bool pass() const { return margin <= tolerance; }
};

class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(std::string command) : command_(std::move(command)) {}

  const std::string& command() const { return command_; }
  const std::vector<CaseRecord>& cases() const { return cases_; }

  CaseRecord& add(CaseRecord record);
  CaseRecord& add(std::string name, double margin, double tolerance, json inputs = json::object(),
                  json values = json::object());
  /// Appends every case of `other`, prefixing names with `prefix`.
  void merge(const VerificationReport& other, const std::string& prefix = "");

  bool pass() const;
  std::size_t pass_count() const;
  /// max(margin - tolerance) over all cases; negative when everything passes.
  double worst_excess() const;

  json to_json() const;
  /// Rebuilds a report; throws if stored pass flags disagree with margins.
  static VerificationReport from_json(const json& j);

 private:
  std::string command_;
  std::vector<CaseRecord> cases_;
};

/// Replaces non-finite values by +/-1e300 so that reports stay valid JSON.
double finite_or_sentinel(double value);

}  // namespace hardy
