#pragma once

#include <string>
#include <vector>

namespace lpkdv {

struct ReportCase {
  std::string name;
  double metric = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string details;
};

struct VerificationReport {
  std::string suite;
  std::vector<ReportCase> cases;
  double wallclock_seconds = 0.0;

  /// pass iff metric <= tolerance
  void check(std::string name, double metric, double tolerance, std::string details = {});
  /// Witness that something is NOT an identity: pass iff metric > threshold.
  void witness(std::string name, double metric, double threshold, std::string details = {});
  /// Records a case whose evaluation threw; metric is NaN and the case fails.
  void error(std::string name, double tolerance, std::string details);
  bool all_pass() const;
  void append(const VerificationReport& other);
};

/// Stable JSON with top-level "schema": "1". wallclock_seconds is emitted last.
std::string report_to_json(const VerificationReport& r);

}  // namespace lpkdv
