#include "lpkdv/report.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace lpkdv {

void VerificationReport::check(std::string name, double metric, double tolerance, std::string details) {
  const bool pass = std::isfinite(metric) && metric <= tolerance;
  cases.push_back({std::move(name), metric, tolerance, pass, std::move(details)});
}

void VerificationReport::witness(std::string name, double metric, double threshold, std::string details) {
  const bool pass = !(metric <= threshold);
  std::string d = "expected-failure witness: must exceed tolerance";
  if (!details.empty()) d += "; " + details;
  cases.push_back({std::move(name), metric, threshold, pass, std::move(d)});
}

void VerificationReport::error(std::string name, double tolerance, std::string details) {
  cases.push_back({std::move(name), std::nan(""), tolerance, false, std::move(details)});
}

bool VerificationReport::all_pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const ReportCase& c) { return c.pass; });
}

void VerificationReport::append(const VerificationReport& other) {
  for (const auto& c : other.cases) {
    ReportCase copy = c;
    copy.name = other.suite + "/" + c.name;
    cases.push_back(std::move(copy));
  }
}

std::string report_to_json(const VerificationReport& r) {
  // ordered_json keeps insertion order, so output is byte-stable.
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["suite"] = r.suite;
  j["all_pass"] = r.all_pass();
  auto& cases = j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : r.cases) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    if (std::isfinite(c.metric))
      e["metric"] = c.metric;
    else
      e["metric"] = nullptr;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    e["details"] = c.details;
    cases.push_back(std::move(e));
  }
  j["wallclock_seconds"] = r.wallclock_seconds;
  return j.dump(2);
}

}  // namespace lpkdv
