#pragma once

#include <map>
#include <string>

#include <json.hpp>

namespace sievekit {

using Json = nlohmann::json;

inline constexpr int kReportSchema = 1;

/// Outcome of one certified computation. passed is true exactly when margin > 0.
struct TheoremReport {
  std::string name;
  std::map<std::string, Json> inputs;
  std::map<std::string, double> computed;
  std::map<std::string, double> tolerances;  // quadrature tolerance per computed value
  double margin = 0.0;
  bool passed = false;
  std::string notes;

  void set_margin(double m) {
    margin = m;
    passed = m > 0.0;
  }
  /// Records a computed value with the tolerance it was obtained at.
  void put(const std::string& key, double value, double tolerance = 0.0) {
    computed[key] = value;
    tolerances[key] = tolerance;
  }
  void note(const std::string& line);
};

Json to_json(const TheoremReport& r);
TheoremReport theorem_report_from_json(const Json& j);

/// Outcome of an empirical run. invariants_ok covers the hard checks (oracle equality,
/// exact identities); report-only metrics live in values.
struct ExperimentReport {
  std::string name;
  Json parameters = Json::object();
  std::map<std::string, double> values;
  std::map<std::string, long long> counters;
  std::map<std::string, double> residuals;
  Json extra = Json::object();
  bool invariants_ok = true;
  std::string notes;

  void note(const std::string& line);
  /// Records an invariant: a failed check clears invariants_ok and is noted.
  void require(bool ok, const std::string& what);
};

Json to_json(const ExperimentReport& r);
ExperimentReport experiment_report_from_json(const Json& j);

}  // namespace sievekit
