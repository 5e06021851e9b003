#include "sievekit/report.hpp"

namespace sievekit {

void TheoremReport::note(const std::string& line) {
  if (!notes.empty()) notes += '\n';
  notes += line;
}

Json to_json(const TheoremReport& r) {
  Json j;
  j["name"] = r.name;
  j["inputs"] = r.inputs;
  j["computed"] = r.computed;
  j["tolerances"] = r.tolerances;
  j["margin"] = r.margin;
  j["passed"] = r.passed;
  j["notes"] = r.notes;
  return j;
}

TheoremReport theorem_report_from_json(const Json& j) {
  TheoremReport r;
  r.name = j.at("name").get<std::string>();
  r.inputs = j.at("inputs").get<std::map<std::string, Json>>();
  r.computed = j.at("computed").get<std::map<std::string, double>>();
  r.tolerances = j.value("tolerances", std::map<std::string, double>{});
  r.margin = j.at("margin").get<double>();
  r.passed = j.at("passed").get<bool>();
  r.notes = j.value("notes", std::string{});
  return r;
}

void ExperimentReport::note(const std::string& line) {
  if (!notes.empty()) notes += '\n';
  notes += line;
}

void ExperimentReport::require(bool ok, const std::string& what) {
  if (!ok) {
    invariants_ok = false;
    note("invariant failed: " + what);
  }
}

Json to_json(const ExperimentReport& r) {
  Json j;
  j["name"] = r.name;
  j["parameters"] = r.parameters;
  j["values"] = r.values;
  j["counters"] = r.counters;
  j["residuals"] = r.residuals;
  j["extra"] = r.extra;
  j["invariants_ok"] = r.invariants_ok;
  j["notes"] = r.notes;
  return j;
}

ExperimentReport experiment_report_from_json(const Json& j) {
  ExperimentReport r;
  r.name = j.at("name").get<std::string>();
  r.parameters = j.value("parameters", Json::object());
  r.values = j.value("values", std::map<std::string, double>{});
  r.counters = j.value("counters", std::map<std::string, long long>{});
  r.residuals = j.value("residuals", std::map<std::string, double>{});
  r.extra = j.value("extra", Json::object());
  r.invariants_ok = j.at("invariants_ok").get<bool>();
  r.notes = j.value("notes", std::string{});
  return r;
}

}  // namespace sievekit
